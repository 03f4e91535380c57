"""Quick end-to-end check of the Python bindings."""

import json
import math

import coeffbound_py as cb


def main():
    s = cb.Series([1, 1], 4)
    assert (s * s).coeffs[:3] == [1, 2, 1]
    half = s.real_power(0.5)
    assert abs(half.coeff(2) + 0.125) < 1e-15

    params = cb.ClassParams(1, 2.0, 0.0)
    f = cb.f_from_p(cb.extremal_series(2, 8), params)
    assert abs(f.coeff(2) - 2 / 3) < 1e-15
    assert abs(cb.sharp_bound(params, 2) - 2 / 3) < 1e-15
    region, value = cb.theorem1_bound(params, 2)
    assert region == "Omega1" and abs(value - 2 / 3) < 1e-15

    p = cb.HerglotzAtoms.random(7, 5)
    again = cb.HerglotzAtoms.from_json(p.to_json())
    f = cb.f_from_atoms(p, params, 12)
    assert abs(f.coeff(5) - cb.f_from_atoms(again, params, 12).coeff(5)) < 1e-14
    assert abs(cb.a_k_direct(p.series(12), params, 5) - f.coeff(5)) < 1e-12
    for k in range(2, 13):
        assert abs(f.coeff(k)) <= cb.sharp_bound(params, k) + 1e-9
    # Truncation at order 64 leaves a tail of at most 2 * 0.9**65 / 0.1.
    deep = cb.f_from_atoms(p, params, 64)
    assert cb.verify_membership(deep, params, 0.9, 360) > -2 * 0.9**65 / 0.1

    h, d, ok = cb.build_hk(3, 2.0, 64)
    assert ok and d == [-1.0]
    assert cb.min_real_part(h, 0.99, 720) >= -2 * 0.99**65 / 0.01

    passed, report = cb.verify("extremal", [1], [2.0], [0.0], k_max=6, order=8)
    assert passed and json.loads(report)["suites"][0]["suite"] == "extremal"

    try:
        cb.HerglotzAtoms([(0.5, 0.0)])
    except ValueError:
        pass
    else:
        raise AssertionError("weights must sum to 1")

    assert math.isclose(cb.theorem2_estimate(1.0, 0), math.exp(0.624))
    print("smoke test passed")


if __name__ == "__main__":
    main()
