import json
from fractions import Fraction

import pytest
from hypothesis import given

from qtorus.cyclo import Cyclo, zeta
from qtorus.fpgroups.algebra import GroupAlgebraElement
from qtorus.fpgroups.presentation import Presentation, parse_presentation
from qtorus.fpgroups.recognize import analyze, free_product_of_cyclics
from qtorus.fpgroups.words import canonical_relator, substitute
from qtorus.matrices import (ResourceCapError, block_fourier, diagonal_unitary, fourier_matrix,
                             identity_unitary, parse_unitary, permutation_matrix, t_pi_matrix)
from qtorus.partitions import CategorySpec, crossing, cup, delta_plain, identity, involute
from qtorus.torus import (EasyModel, ExtractionConfig, ExtractionError, GroupDualModel,
                          IntertwinerModel, character_image, circle_key, closed_form, extract,
                          extract_easy, extract_intertwiners, kronecker_delta_Q, named_model,
                          probe_conjectures, verify_provenance)
from strategies import partitions, sample_unitaries

SAMPLED = sample_unitaries(10, seed=3)


def _relators(report):
    return set(report.raw_presentation.relators)


@given(partitions(colored=True))
def test_identity_q_reduces_to_plain_delta(p):
    Q = identity_unitary(2)
    for i in range(2 ** p.size):
        idx = [(i >> b) & 1 for b in range(p.size)]
        got = kronecker_delta_Q(p, Q, idx[:p.upper], idx[p.upper:])
        assert got == delta_plain(p, idx[:p.upper], idx[p.upper:])


def test_kronecker_checks_arity_and_range():
    with pytest.raises(ExtractionError):
        kronecker_delta_Q(cup(), identity_unitary(2), [], [0])
    with pytest.raises(ExtractionError):
        kronecker_delta_Q(cup(), identity_unitary(2), [], [0, 2])


def test_circle_key_ignores_rotation():
    a = crossing()
    assert circle_key(a) == circle_key(involute(a).whitened())


@pytest.mark.parametrize("Q", SAMPLED, ids=str)
def test_identity_only_category_gives_no_relations(Q):
    model = EasyModel(CategorySpec("id", (identity(1),)), "identity-only")
    assert extract_easy(model, Q).raw_relations == []


@pytest.mark.parametrize("Q", SAMPLED, ids=str)
def test_free_unitary_has_no_relations(Q):
    r = extract_easy(named_model("u+"), Q)
    assert r.raw_relations == [] and str(r.classification) == f"Free({Q.n})"


@pytest.mark.parametrize("Q", SAMPLED, ids=str)
def test_right_phase_invariance(Q):
    phases = [zeta(4) ** k for k in range(Q.n)]
    QD = Q @ diagonal_unitary(phases)
    model = named_model("o+")
    assert _relators(extract_easy(model, QD)) == _relators(extract_easy(model, Q))


@pytest.mark.parametrize("Q", SAMPLED, ids=str)
def test_left_permutation_invariance(Q):
    sigma = list(range(2, Q.n + 1)) + [1]
    PQ = permutation_matrix(sigma) @ Q
    model = named_model("h+")
    assert _relators(extract_easy(model, PQ)) == _relators(extract_easy(model, Q))


@pytest.mark.parametrize("Q", SAMPLED[:5], ids=str)
def test_right_permutation_relabels_generators(Q):
    sigma = list(range(2, Q.n + 1)) + [1]
    QP = Q @ permutation_matrix(sigma)
    model = named_model("o+")
    # column i of QP is column sigma(i) of Q, so g_sigma(i) of Q becomes g_i of QP
    relabel = {t: (i,) for i, t in enumerate(sigma, 1)}
    moved = {canonical_relator(substitute(r, relabel)) for r in _relators(extract_easy(model, Q))}
    assert _relators(extract_easy(model, QP)) == moved


@pytest.mark.parametrize("model", ["o+", "h+", "s+"])
@pytest.mark.parametrize("Q", SAMPLED[:4], ids=str)
def test_provenance_reverifies(model, Q):
    depth = 4 if model == "s+" else 6
    r = extract_easy(named_model(model), Q, ExtractionConfig(depth=depth))
    assert all(verify_provenance(rel, Q) for rel in r.raw_relations)


# cross-oracles --------------------------------------------------------------------------

def _same_group(a, b):
    if a.classification != b.classification:
        return False
    return (all(b.analysis.is_trivial(r.word) for r in a.raw_relations)
            and all(a.analysis.is_trivial(r.word) for r in b.raw_relations))


@pytest.mark.parametrize("Q", SAMPLED[:6], ids=str)
def test_cup_intertwiner_matches_orthogonal_extraction(Q):
    T = t_pi_matrix(cup(), Q.n)
    via_map = extract_intertwiners(IntertwinerModel(((T, "", "ww"),)), Q)
    assert _same_group(via_map, extract_easy(named_model("o+"), Q))


def test_flip_gives_commutators():
    Q = identity_unitary(3)
    flip = t_pi_matrix(crossing(), 3)
    r = extract_intertwiners(IntertwinerModel(((flip, "ww", "ww"),)), Q)
    assert str(r.classification) == "FreeAbelian(3)"
    with_cup = IntertwinerModel(((flip, "ww", "ww"), (t_pi_matrix(cup(), 3), "", "ww")))
    assert str(extract_intertwiners(with_cup, Q).classification) == "Abelian([2, 2, 2])"


@pytest.mark.parametrize("Q", SAMPLED[:6], ids=str)
def test_orthogonal_closed_form(Q):
    assert _same_group(closed_form("O_plus", Q), extract_easy(named_model("o+"), Q))


@pytest.mark.parametrize("parts", [(2,), (3,), (2, 2), (1, 3), (2, 1, 1)])
def test_symmetric_closed_form_on_fourier_blocks(parts):
    Q = block_fourier(parts)
    want = free_product_of_cyclics(parts)
    easy = extract_easy(named_model("s+"), Q)
    assert easy.classification == want
    assert _same_group(closed_form("S_plus", Q), easy)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_hyperoctahedral_identity(N):
    r = extract_easy(named_model("h+"), identity_unitary(N))
    assert r.classification == free_product_of_cyclics([2] * N)


def test_group_dual_with_full_support_identifies_generators():
    gamma = parse_presentation("<a,b,c | >")
    r = closed_form("GroupDual", fourier_matrix(3), gamma)
    assert str(r.classification) == "Free(1)"
    dual = extract(GroupDualModel(parse_presentation("<a,b | a^2, b^2>")), identity_unitary(2))
    assert str(dual.classification) == "FreeProductCyclic([2, 2])"


def test_closed_form_arguments():
    with pytest.raises(ExtractionError):
        closed_form("S_plus", fourier_matrix(2), parse_presentation("<a,b|>"))
    with pytest.raises(ExtractionError):
        closed_form("B_plus", fourier_matrix(2))


# characters -----------------------------------------------------------------------------

def test_s4_character():
    Q = block_fourier((2, 2))
    r = closed_form("S_plus", Q)
    rho = character_image(r, Q, 1)
    g, h = (rho.group.letter(1), rho.group.letter(2))
    assert rho.terms == {(): Cyclo.rational(2), g: Cyclo.one(), h: Cyclo.one()}
    assert (rho * rho).trace() == Cyclo.rational(6)
    assert (rho ** 2) == character_image(r, Q, 1) * character_image(r, Q, 1)


def test_h2_characters_in_the_dihedral_ambient():
    Q = fourier_matrix(2)
    r = extract_easy(named_model("h+"), Q)
    dinf = analyze(parse_presentation("<g,h | g^2, h^2>"))
    rho = character_image(r, Q, 1, ambient=dinf)
    assert str(rho) == "g + h"
    # sum_i u_ii^2 with u_ii = (g + h) / 2
    half = Fraction(1, 2)
    want = GroupAlgebraElement.from_words(dinf.group, [(1, ()), (half, (1, 2)), (half, (2, 1))])
    assert character_image(r, Q, 2, ambient=dinf) == want


def test_h2_extracted_torus_is_abelian():
    r = extract_easy(named_model("h+"), fourier_matrix(2))
    assert str(r.classification) == "Abelian([2, 2])"


def test_character_without_normal_forms_stays_unreduced():
    Q = identity_unitary(3)
    gamma = parse_presentation("<a,b,c | a^2, b^2, c^3, a c^-1 a c>")
    r = closed_form("GroupDual", Q, gamma, ExtractionConfig(coset_cap=200))
    assert str(r.classification) == "Unknown"
    img = character_image(r, Q, 1)
    assert not img.reduced and len(img.terms) == 3


def test_probe_reports_characters():
    Q = block_fourier((2, 3))
    out = probe_conjectures(closed_form("S_plus", Q), Q)
    assert out["amenability"] == "non_amenable"
    assert [c["power"] for c in out["characters"]] == [1, 2]


# reports --------------------------------------------------------------------------------

def test_report_json_is_stable():
    Q = parse_unitary("fourier:2,2")
    a = extract_easy(named_model("s+"), Q).to_json()
    b = extract_easy(named_model("s+"), Q).to_json()
    assert a == b
    d = json.loads(a)
    assert d["schema_version"] == 1
    assert d["classification"]["text"] == "FreeProductCyclic([2, 2])"
    assert Presentation.from_dict(d["presentation"]).ngens == 2
    assert json.dumps(d, sort_keys=True, indent=2) == a


def test_index_cap():
    with pytest.raises(ResourceCapError):
        extract_easy(named_model("s+"), identity_unitary(3), ExtractionConfig(index_cap=2))


def test_depth_is_validated():
    with pytest.raises(ExtractionError):
        ExtractionConfig(depth=1)
    with pytest.raises(ExtractionError):
        extract_easy(named_model("h+"), identity_unitary(2), ExtractionConfig(depth=3))
