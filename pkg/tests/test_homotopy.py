import pytest

from tmfseq.homotopy import _match_rule_source, assemble_homotopy
from tmfseq.mayer_vietoris import MayerVietoris
from tmfseq.monomial import parse_monomial
from tmfseq.sseq import (ExtensionRule, SpectralSequence, load_differentials,
                         load_extensions)


@pytest.fixture(scope="module")
def p2():
    mv = MayerVietoris("2")
    ss = SpectralSequence(mv, load_differentials("2"), (-32, 30), 24)
    ss.run()
    return mv, ss, load_extensions("2")


def test_rule_matching_with_delta_shift():
    rule = ExtensionRule("join", 4, parse_monomial("h2 D^0"), None,
                         parse_monomial("h1^3 D^0"), (1, (0,)))
    assert _match_rule_source(rule.source, parse_monomial("D^3 h2"), rule.congruence) == 3
    assert _match_rule_source(rule.source, parse_monomial("<D^-2 h2>"), rule.congruence) == -2
    assert _match_rule_source(rule.source, parse_monomial("h1 D"), rule.congruence) is None


def test_pi3_tower_joins_to_z8(p2):
    mv, ss, rules = p2
    rep = assemble_homotopy(ss, rules, 3)
    assert rep.group_name == "Z/8"
    assert any("join" in p for p in rep.provenance)


def test_pi27_tower_joins(p2):
    mv, ss, rules = p2
    rep = assemble_homotopy(ss, rules, 27)
    assert rep.group_name == "Z/8"


def test_negative_g_prime_tower(p2):
    mv, ss, rules = p2
    rep = assemble_homotopy(ss, rules, -28)
    # g-prime tower: bracket Z/2 under <2 g D^-2> of order 4 joins to Z/8
    assert rep.group_name == "Z/8", [(str(n), o, f) for n, o, f in rep.generators]


def test_pi_minus_21_lattice(p2):
    mv, ss, rules = p2
    rep = assemble_homotopy(ss, rules, -21)
    assert rep.group_name == "Z"
    assert [str(n) for n, _, _ in rep.generators] == ["[1/4 D^-1 c4^-1 c6]"]


def test_unjoined_torsion_stays_split(p2):
    mv, ss, rules = p2
    rep = assemble_homotopy(ss, rules, 9)
    assert rep.group_name == "Z/2 + Z/2"
