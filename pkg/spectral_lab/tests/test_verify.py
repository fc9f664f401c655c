import math

import pytest

from spectral_lab import (
    BoundArgumentError,
    DocumentNames,
    InvalidFamily,
    SpectralLabValueError,
    schema_validators,
    verify,
)
from spectral_lab.enumeration import canonical_form, enumerate_connected
from spectral_lab.graphs import (
    FamilyKind,
    complete_graph,
    graph6_encode,
    is_connected,
    path_graph,
    star_graph,
)
from spectral_lab.storage import SpectrumCache
from spectral_lab.verify import (
    SLACK,
    TABLE1_ENERGY_CORRECTIONS,
    TABLE1_REFERENCE,
    ChainLink,
    ReportBuilder,
    apex_join,
    bound_cases,
    bound_chains,
    bound_f,
    bound_g,
    bound_star_clique,
    chain_endpoints,
    check_energy_report,
    energy_report,
    family_rows,
    merge_verification_reports,
    p3_clique_witness,
    summarize_family_rows,
    three_cliques,
    verify_configuration_lemmas,
    verify_conjecture_p2,
    verify_family_lemma,
    verify_negative,
    verify_order,
    verify_positive,
    verify_sign_claims,
    verify_table1,
)

CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112}


def _without_time(report):
    return {k: v for k, v in report.items() if k != "wall_time"}


def _hits(report, section, bound, n):
    return [h for h in report[section] if h["bound"] == bound and h["n"] == n]


def test_energy_report_of_p3():
    report = energy_report(path_graph(3))
    assert report["graph6"] == "Bg"
    assert (report["n"], report["m"], report["exponent"]) == (3, 2, 3.0)
    assert report["exceptional"] == "P_3"
    assert report["e_minus"] == pytest.approx(2 * math.sqrt(2))
    assert report["margin_neg"] == pytest.approx(2 * math.sqrt(2) - 2)
    assert report["margin_neg_strict"] == pytest.approx(2 * math.sqrt(2) - 3)
    assert report["margin_pos_path"] == pytest.approx(0.0, abs=1e-9)
    schema_validators[DocumentNames.energy_report].validate(report)


def test_energy_report_of_complete_graph():
    report = energy_report(complete_graph(5))
    assert report["exceptional"] == "K_n"
    assert report["margin_neg"] == pytest.approx(0.0, abs=1e-9)
    assert report["e_plus"] == pytest.approx(64.0)


def test_unknown_claim():
    builder = ReportBuilder("nonsense", 3)
    with pytest.raises(SpectralLabValueError):
        check_energy_report(builder, "nonsense", energy_report(path_graph(3)))


def test_verify_negative():
    report = verify_negative(1, 6)
    assert report["claim"] == "negative"
    assert report["n_range"] == [1, 6]
    assert report["violations"] == []
    assert report["counts"] == {str(n): c for n, c in CONNECTED_COUNTS.items()}
    assert report["graphs_checked"] == sum(CONNECTED_COUNTS.values())
    for n in range(1, 7):
        complete = canonical_form(complete_graph(n))
        equal = _hits(report, "equalities", "neg_kn", n)
        assert [h["graph6"] for h in equal] == [complete]
    # P_3 misses the strict bound but is exempt from it
    assert _hits(report, "violations", "neg_strict", 3) == []
    strict = [h for h in report["minimizers"] if h["bound"] == "neg_strict"]
    assert strict and all(h["exceptional"] == "none" for h in strict)


def test_only_complete_graphs_and_p3_fall_below_n():
    for n in range(1, 8):
        below, equal = [], []

        def collect(g):
            report = energy_report(g, validate=False)
            if report["margin_neg_strict"] < -SLACK:
                below.append(report["graph6"])
            if abs(report["margin_neg"]) <= SLACK:
                equal.append(report["graph6"])

        enumerate_connected(n, collect)
        complete = canonical_form(complete_graph(n))
        assert equal == [complete]
        expected = [complete]
        if n == 3:
            expected.append(canonical_form(path_graph(3)))
        assert sorted(below) == sorted(expected)


def test_batches_do_not_change_the_report(monkeypatch):
    whole = verify_order("negative", 5)
    monkeypatch.setattr(verify, "BATCH_SIZE", 4)
    split = verify_order("negative", 5)
    assert split["counts"] == whole["counts"] == {"5": 21}
    for section in ("violations", "minimizers", "equalities"):
        assert [(h["bound"], h["graph6"]) for h in split[section]] == [
            (h["bound"], h["graph6"]) for h in whole[section]
        ]
        assert [h["margin"] for h in split[section]] == pytest.approx(
            [h["margin"] for h in whole[section]], abs=1e-12
        )


def test_unknown_claim_in_exhaustive_run():
    with pytest.raises(SpectralLabValueError):
        verify_order("nonsense", 3)


def test_verify_positive():
    report = verify_positive(1, 6)
    assert report["claim"] == "positive"
    assert report["violations"] == []
    for n in range(1, 7):
        path = canonical_form(path_graph(n))
        assert path in [h["graph6"] for h in _hits(report, "equalities", "pos_path", n)]
    assert _hits(report, "minimizers", "pos_path", 3)[0]["graph6"] == canonical_form(
        path_graph(3)
    )
    # E_3^+(P_4) = 2 sqrt(5) meets sqrt(5) / 2 * n exactly
    linear = _hits(report, "equalities", "pos_linear", 4)
    assert [h["graph6"] for h in linear] == [canonical_form(path_graph(4))]


def test_linear_bound_only_at_exponent_three():
    report = verify_order("positive", 4, p=2)
    assert report["exponent"] == 2.0
    assert {h["bound"] for h in report["minimizers"]} == {"pos_path"}
    report = verify_order("negative", 4, p=2.5)
    assert {h["bound"] for h in report["minimizers"]} == {"neg_kn"}


def test_verify_conjecture_p2():
    report = verify_conjecture_p2(1, 6)
    assert (report["claim"], report["exponent"]) == ("p2_min", 2.0)
    assert report["violations"] == []
    # stars and complete graphs meet n - 1 with equality
    equal = [h["graph6"] for h in _hits(report, "equalities", "p2_min", 5)]
    assert canonical_form(star_graph(4)) in equal
    assert canonical_form(complete_graph(5)) in equal


def test_invalid_ranges():
    with pytest.raises(SpectralLabValueError):
        verify_negative(0, 3)
    with pytest.raises(SpectralLabValueError):
        verify_positive(5, 4)


def test_merge_is_associative_and_order_free():
    parts = [verify_order("negative", n) for n in range(1, 6)]
    flat = merge_verification_reports(parts)
    nested = merge_verification_reports(
        [
            merge_verification_reports(parts[:2]),
            merge_verification_reports(parts[2:]),
        ]
    )
    backwards = merge_verification_reports(parts[::-1])
    assert _without_time(flat) == _without_time(nested) == _without_time(backwards)
    assert _without_time(flat) == _without_time(verify_negative(1, 5))
    assert flat["wall_time"] == pytest.approx(sum(p["wall_time"] for p in parts))


def test_merge_rejects_mixed_reports():
    with pytest.raises(SpectralLabValueError):
        merge_verification_reports([])
    with pytest.raises(SpectralLabValueError):
        merge_verification_reports(
            [verify_order("negative", 3), verify_order("positive", 3)]
        )
    with pytest.raises(SpectralLabValueError):
        merge_verification_reports(
            [verify_order("negative", 3), verify_order("negative", 3, p=2)]
        )


def test_report_builder_keeps_three_minimizers():
    builder = ReportBuilder("negative", 3)
    for g in (path_graph(4), star_graph(3), complete_graph(4), path_graph(2)):
        check_energy_report(builder, "negative", energy_report(g))
    report = builder.finish()
    assert report["n_range"] == [2, 4]
    neg_kn = _hits(report, "minimizers", "neg_kn", 4)
    assert len(neg_kn) == 3
    assert [h["margin"] for h in neg_kn] == sorted(h["margin"] for h in neg_kn)
    assert neg_kn[0]["graph6"] == graph6_encode(complete_graph(4))


def test_table1():
    rows = verify_table1()
    assert [row["name"] for row in rows] == list(TABLE1_REFERENCE)
    assert all(row["ok"] for row in rows)
    by_name = {row["name"]: row for row in rows}
    assert by_name["H_14"]["e3_minus"] == pytest.approx(8.499, abs=1.1e-3)
    assert by_name["H_6"]["e3_minus"] == pytest.approx(10.032, abs=1.1e-3)
    assert by_name["C_4"]["spectrum"] == [2.0, 0.0, 0.0, -2.0]
    assert by_name["P_3"]["reference_spectrum"] == [1.414, 0.0, -1.414]
    assert by_name["P_3"]["max_spectrum_dev"] <= 1e-3


def test_table1_h15_uses_the_corrected_energy():
    rows = {row["name"]: row for row in verify_table1()}
    h15 = rows["H_15"]
    assert h15["e3_minus"] == pytest.approx(10.208, abs=1e-3)
    assert h15["reference_e3_minus"] == 10.679
    assert h15["corrected_e3_minus"] == TABLE1_ENERGY_CORRECTIONS["H_15"] == 10.208
    assert h15["energy_dev"] <= 1e-3
    assert h15["ok"]
    # the printed value is off by far more than the table tolerance
    assert abs(h15["e3_minus"] - h15["reference_e3_minus"]) > 0.4
    others = [row for name, row in rows.items() if name != "H_15"]
    assert all(row["corrected_e3_minus"] is None for row in others)


def test_table1_through_cache(tmp_path):
    path = tmp_path / "spectra.jsonl"
    first = verify_table1(cache=SpectrumCache(path))
    second = verify_table1(cache=SpectrumCache(path), solver="lapack")
    assert len(SpectrumCache(path)) > 0
    for a, b in zip(first, second):
        assert a["ok"] and b["ok"]
        assert a["e3_minus"] == pytest.approx(b["e3_minus"], abs=1e-9)


def test_complete_minus_edge_rows():
    rows = family_rows(FamilyKind.complete_minus_edge, 5, 12)
    assert [row["n"] for row in rows] == list(range(5, 13))
    assert all(row["ok"] for row in rows)
    first = rows[0]
    assert first["bound"] == 6.0
    assert first["margin"] == pytest.approx((math.sqrt(7) - 1) ** 3 + 2 - 6)
    assert first["margin"] == pytest.approx(0.458, abs=1e-3)
    assert first["negative_root"] == pytest.approx(1 - math.sqrt(7))
    assert first["agreement"] <= 1e-8
    assert first["t"] is None and first["multiset_ok"] is None


def test_pendant_rows():
    rows = family_rows("complete-plus-pendant", 4, 10)
    assert all(row["ok"] for row in rows)
    assert all(row["negative_root"] < -(3 ** (1 / 3)) for row in rows)


def test_clique_k2_rows_are_strict():
    rows = family_rows(FamilyKind.clique_k2, 6, 12)
    assert all(row["strict"] and row["margin"] > 0 for row in rows)
    assert all(row["ok"] for row in rows)
    assert all(row["negative_root"] < -(4 ** (1 / 3)) for row in rows)


def test_subdivided_star_rows():
    rows = family_rows(FamilyKind.subdivided_star, 2, 6)
    assert len(rows) == 1 + 2 + 3 + 4 + 5
    assert all(row["multiset_ok"] and row["ok"] for row in rows)
    assert all(row["order"] == row["n"] + row["t"] + 1 for row in rows)
    rows = family_rows(FamilyKind.subdivided_star, 4, 6, t_range=(2, 3))
    assert [(row["n"], row["t"]) for row in rows] == [
        (4, 2),
        (4, 3),
        (5, 2),
        (5, 3),
        (6, 2),
        (6, 3),
    ]


def test_large_members_skip_the_eigensolver():
    (row,) = family_rows(FamilyKind.complete_minus_edge, 41, 41)
    assert row["e3_minus_numeric"] is None and row["agreement"] is None
    assert row["ok"]
    report = summarize_family_rows(FamilyKind.complete_minus_edge, [row])
    assert report["violations"] == []


@pytest.mark.parametrize(
    "kind, n_lo, n_hi, t_range",
    [
        (FamilyKind.complete_minus_edge, 4, 6, None),
        (FamilyKind.clique_k2, 5, 6, None),
        (FamilyKind.clique_k2, 6, 7, (1, 2)),
        (FamilyKind.subdivided_star, 3, 4, (1, 3)),
        (FamilyKind.path, 3, 4, None),
        (FamilyKind.complete_plus_pendant, 6, 5, None),
    ],
)
def test_family_range_errors(kind, n_lo, n_hi, t_range):
    with pytest.raises(InvalidFamily):
        family_rows(kind, n_lo, n_hi, t_range)


def test_verify_family_lemma():
    report = verify_family_lemma(FamilyKind.complete_minus_edge, 5, 8)
    assert report["claim"] == "family:complete-minus-edge"
    assert report["violations"] == []
    assert report["counts"] == {"5": 1, "6": 1, "7": 1, "8": 1}


def test_failing_family_rows_become_violations():
    rows = family_rows(FamilyKind.clique_k2, 6, 7)
    rows[0] = dict(rows[0], margin=0.0)
    rows[1] = dict(rows[1], agreement=1e-3)
    report = summarize_family_rows(FamilyKind.clique_k2, rows)
    bounds = sorted(h["bound"] for h in report["violations"])
    assert bounds == ["closed_form_agreement", "family_bound"]


def test_configuration_witnesses():
    report = verify_configuration_lemmas(seed=3, samples=10)
    assert report["violations"] == []
    assert report["graphs_checked"] == 50
    bounds = {h["bound"] for h in report["minimizers"]}
    assert bounds == {
        "config:union_of_cliques",
        "config:p3_and_clique",
        "config:p3s_and_cliques",
        "config:dominating_vertex",
        "config:three_cliques",
    }
    again = verify_configuration_lemmas(seed=3, samples=10)
    assert _without_time(again) == _without_time(report)
    with pytest.raises(SpectralLabValueError):
        verify_configuration_lemmas(max_order=6)


def test_witness_builders():
    g = three_cliques([2, 2, 2])
    assert (g.n, g.m) == (6, 6)
    assert energy_report(g)["margin_neg_strict"] >= 0
    with pytest.raises(SpectralLabValueError):
        three_cliques([2, 2])
    with pytest.raises(SpectralLabValueError):
        three_cliques([1, 2, 2])

    joined = apex_join([complete_graph(2), path_graph(3)])
    assert (joined.n, joined.m) == (6, 8)
    assert joined.degree(0) == 5
    partial = apex_join([complete_graph(3)], [[0]])
    assert partial.neighbors(0) == [1]

    w = p3_clique_witness(0, 3, u_to_clique=[1], clique_to_path=[(2, 2)])
    assert w.n == 7
    assert w.neighbors(0) == [1, 4, 5]
    assert w.has_edge(6, 3)
    assert is_connected(w)
    with pytest.raises(SpectralLabValueError):
        p3_clique_witness(0, 3, clique_to_path=[(0, 1)])


def test_bound_functions():
    assert bound_f(4, 0, 2, 2) == pytest.approx(0.53, abs=0.01)
    assert bound_g(4, 0, 0, 3, 1) == pytest.approx(1.95, abs=0.01)
    assert bound_star_clique(7, 2, 0) - 7 == pytest.approx(1.02, abs=0.01)
    with pytest.raises(BoundArgumentError):
        bound_f(4, 1, 1, 1)
    with pytest.raises(BoundArgumentError):
        bound_f(4, -1, 3, 2)
    with pytest.raises(BoundArgumentError):
        bound_g(4, 1, 1, 2, 0)
    with pytest.raises(BoundArgumentError):
        bound_star_clique(6, 2, 0)


def test_bound_cases():
    cases = bound_cases()
    assert len(cases) == 12
    assert all(case["ok"] for case in cases)
    for case in cases:
        schema_validators[DocumentNames.bound_case].validate(case)
    approx = [case for case in cases if case["relation"] == "approx"]
    assert all(case["deviation"] <= 0.01 for case in approx)


def test_chain_endpoints():
    cases = chain_endpoints(5, 20)
    assert len(cases) == 32
    assert all(case["ok"] and case["value"] >= 0 for case in cases)


def test_bound_chains_hold():
    links = bound_chains(4, 12)
    assert {link.name for link in links} == {
        "f:n3m->n1",
        "f:n3m->n2",
        "f:n1->n2",
        "g:n3->n1",
        "g:n3m->n1",
        "g:->(0,s-1,0,1)",
    }
    assert all(link.holds for link in links)
    assert min(link.difference for link in links) >= -SLACK
    assert not ChainLink("x", (4,), (4,), -1.0).holds


def test_sign_claims():
    claims = {claim["name"]: claim for claim in verify_sign_claims()}
    assert all(claim["holds"] for claim in claims.values())
    pendant = claims["pendant_cubic_at_minus_cbrt3"]
    assert (pendant["n_lo"], pendant["n_hi"], pendant["anchor_n"]) == (4, 1000, 4)
    assert pendant["anchor_value"] == pytest.approx(0.246, abs=1e-3)
    assert pendant["anchor_ok"]
    gadget = claims["clique_k2_quartic_at_minus_cbrt4"]
    assert gadget["anchor_value"] == pytest.approx(-0.119, abs=1e-3)
    assert gadget["anchor_ok"]
    minus_edge = claims["complete_minus_edge_root_cubed_above_4"]
    assert minus_edge["anchor_ok"] is None
    assert minus_edge["worst_value"] > 4


def test_sign_claims_on_a_short_range():
    claims = verify_sign_claims(n_hi=20)
    assert [claim["n_hi"] for claim in claims] == [20, 20, 20]
    assert all(claim["holds"] for claim in claims)
