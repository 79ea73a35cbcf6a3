import numpy as np
import pytest

import evendct


def test_kok_plan_matches_oracle():
    for n in (2, 3, 6, 8, 20, 48):
        plan = evendct.kok_plan(n)
        assert np.max(np.abs(plan.to_matrix() - evendct.oracle.dct2(n))) < 1e-10


def test_scaled_fold_targets():
    assert evendct.fold_scaled(evendct.scaled_plan(8)).plan.count_ops().as_tuple() == (5, 29, 0)
    assert evendct.fold_scaled(evendct.scaled_plan(6)).plan.count_ops().as_tuple() == (1, 16, 2)


def test_scaled_reconstruction_and_apply():
    sf = evendct.scaled_plan(12)
    assert np.max(np.abs(sf.reconstruct() - evendct.oracle.dct2(12))) < 1e-10
    x = np.linspace(-1.0, 1.0, 12)
    assert np.allclose(sf.apply(list(x)), evendct.oracle.dct2(12) @ x, atol=1e-12)


def test_transpose_and_dct3():
    p = evendct.kok_plan(24)
    t = p.transpose()
    assert t.count_ops() == p.count_ops()
    assert np.allclose(t.to_matrix(), p.to_matrix().T, atol=1e-10)
    assert np.allclose(evendct.dct3_plan(24).to_matrix(), evendct.oracle.dct3(24), atol=1e-10)


def test_json_round_trip():
    sf = evendct.fold_scaled(evendct.scaled_plan(8))
    back = evendct.plan_from_json(sf.to_json())
    assert back.pi == sf.pi
    assert back.plan.count_ops().as_tuple() == (5, 29, 0)
    plain = evendct.plan_from_json(evendct.kok_plan(4).to_json())
    assert isinstance(plain, evendct.Plan)


def test_complexity():
    c = evendct.complexity
    assert c.scaled_counts(15, 3).as_tuple() == (183, 1090, 43)
    assert c.pfa_scaled_bound(5, 4) == 142
    assert [m for m in range(1, 17) if c.matches_pfa(m)] == [1, 2]
    assert "3,4,48,66,337,16,63" in c.table2_csv()
    with pytest.raises(IndexError):
        c.kok_counts(7, 1)


def test_cli_in_process():
    code, out, _ = evendct.run_cli(["count", "--n", "6", "--scaled", "--fold"])
    assert (code, out) == (0, "1,16,2\n")
    code, _, err = evendct.run_cli(["gen", "--n", "0"])
    assert code == 2 and "q*2^m" in err


def test_bad_input_raises():
    with pytest.raises(ValueError):
        evendct.kok_plan(4).evaluate([1.0, 2.0])
    with pytest.raises(ValueError):
        evendct.scaled_plan(5)
