"""Smoke test for the pydirset extension module.

Build and install first:

    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/pydirset-*.whl
"""

import pydirset


def main():
    f9 = pydirset.Field(3, 2)
    assert f9.q == 9 and f9.modulus == [1, 0, 1] and f9.generator == 4
    assert f9.mul(3, 3) == 2
    assert f9.inv(2) == 2
    assert f9.mult_subgroup(4) == [1, 2]
    assert pydirset.Field(7).generator == 3
    assert pydirset.Field.with_order(16).n == 4

    try:
        pydirset.Field(4)
    except ValueError as e:
        assert "not prime" in str(e)
    else:
        raise AssertionError("composite characteristic accepted")

    cube = pydirset.Function.from_coefficients(f9, [0, 0, 0, 1])
    assert cube.degree == 3
    assert cube.directions() == [1, 2, 3, 6]
    assert cube.is_permutation()
    assert cube.monomial_form() == (1, 1, 0)
    assert cube.main2_criterion()["kind"] == "permutation_proven"
    assert cube.sziklai_classify(2)["outcome"] == "contained"

    again = pydirset.Function.from_table(f9, cube.table)
    assert again.coefficients == cube.coefficients

    f5 = pydirset.Field(5)
    sq = pydirset.Function.from_coefficients(f5, [0, 0, 1])
    assert len(sq.directions()) == 5 and not sq.is_permutation()
    check = sq.theorem1_check(0, 4)
    assert check["quotient_size"] == 5 and check["bound"] == 5
    assert sq.build_h_set(0, 4)["h_set"] == [1, 2, 3, 4]

    report = pydirset.run_campaign("conj", 5, d=2)
    assert report["contained"] == 15 and report["counterexample_count"] == 0
    report = pydirset.run_campaign("main2", 5, jobs=1)
    assert report["counterexample_count"] == 0
    search = pydirset.run_search(9, 2, family="monomial-forms")
    assert search["count"] == 81

    try:
        pydirset.run_search(7, 5)
    except ValueError as e:
        assert "does not divide" in str(e)
    else:
        raise AssertionError("non-divisor accepted")

    print("pydirset smoke test passed")


if __name__ == "__main__":
    main()
