import json
import math

import numpy as np
import pytest

import qfdiv


def test_catalog():
    assert qfdiv.functions() == ["neglog", "xlogx", "inverse", "square"]
    assert qfdiv.f_eval("inverse", 4.0) == 0.25


def test_commuting_relative_entropy():
    rho = np.diag([0.75, 0.25]).astype(complex)
    sigma = np.diag([0.5, 0.5]).astype(complex)
    expected = 0.75 * math.log(1.5) + 0.25 * math.log(0.5)
    assert qfdiv.relative_entropy("neglog", rho, sigma) == pytest.approx(expected, abs=1e-14)
    assert qfdiv.relative_entropy("neglog", rho, sigma, form="vec") == pytest.approx(expected, abs=1e-9)


def test_umegaki_against_numpy():
    rho = qfdiv.random_density(3, 1)
    sigma = qfdiv.random_density(3, 2)

    def logm(a):
        w, v = np.linalg.eigh(a)
        return v @ np.diag(np.log(w)) @ v.conj().T

    expected = np.trace(rho @ (logm(rho) - logm(sigma))).real
    assert qfdiv.relative_entropy("neglog", rho, sigma) == pytest.approx(expected, abs=1e-10)


def test_entropy_and_eigh():
    half = np.eye(2, dtype=complex) / 2
    assert qfdiv.f_entropy("neglog", half) == pytest.approx(math.log(2))
    w, _ = qfdiv.eigh(np.array([[0, 1], [1, 0]], dtype=complex))
    assert w == pytest.approx([-1, 1])


def test_channels():
    rho = qfdiv.random_density(2, 5)
    out = qfdiv.apply_channel(qfdiv.completely_depolarizing(2), rho)
    assert np.allclose(out, np.eye(2) / 2, atol=1e-12)
    k = qfdiv.random_channel(2, 2, 3, 7)
    assert np.allclose(sum(a.conj().T @ a for a in k), np.eye(2), atol=1e-12)
    assert qfdiv.entanglement_fidelity(np.eye(2, dtype=complex) / 2, qfdiv.completely_depolarizing(2)) == pytest.approx(0.25)


def test_search_and_errors():
    ident = [np.eye(2, dtype=complex)]
    est = qfdiv.capacity_search("holevo", "neglog", ident, 2000, 1)
    assert est["value"] >= math.log(2) - 5e-2
    with pytest.raises(qfdiv.Error):
        qfdiv.relative_entropy("neglog", np.eye(2, dtype=complex), np.eye(3, dtype=complex))


def test_run_report():
    report, code = qfdiv.run({"trials": 0})
    assert code == 0 and report["records"] == []
    report, code = qfdiv.run({"trials": 1, "check": "klein", "function": "neglog"})
    assert report["summary"]["total"]["pass"] == 1
    again, _ = qfdiv.run(json.dumps({"trials": 1, "check": "klein", "function": "neglog"}))
    assert again == report
