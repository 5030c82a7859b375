import pytest

from qbic import (AmbiguousMatch, MatrixGF, QBicForm, TypeSignature,
                  all_signatures, classify, make_field, standard_gram)
from qbic.builtin_forms import n2_degeneration_form, n4_degeneration_form
from qbic.forms import _profile_table


def test_signature_count_dim6():
    # sum over b of the partition numbers p(6-b): 11+7+5+3+2+1+1
    assert len(all_signatures(6)) == 30


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2)])
def test_profile_table_injective(p, e):
    for dim in range(1, 7):
        table = _profile_table(p, e, dim)
        assert len(table) == len(all_signatures(dim))


@pytest.mark.parametrize("p", [2, 3])
def test_classify_roundtrip_dims_up_to_6(p):
    ctx = make_field(p, 4)
    for dim in range(1, 7):
        for sig in all_signatures(dim):
            assert classify(standard_gram(sig, ctx, 1)) == sig


def test_classify_nonsingular_gram_is_units(F16, rng):
    for _ in range(20):
        dim = rng.randrange(1, 6)
        while True:
            M = MatrixGF(F16, [[rng.randrange(16) for _ in range(dim)] for _ in range(dim)])
            if M.is_invertible():
                break
        assert classify(QBicForm(F16, 1, M)) == TypeSignature((), dim)


def test_n2_degeneration_family(F16, rng):
    ctx = F16
    for _ in range(20):
        t = rng.randrange(1, 16)
        assert classify(n2_degeneration_form(2, 1, t, ctx)).format() == "1+1"
    assert classify(n2_degeneration_form(2, 1, 0, ctx)).format() == "N2"


def test_n4_degeneration_family_exhaustive(F16):
    # the bad set is exactly the (q+1)-st roots of unity
    for t in F16.elements():
        got = classify(n4_degeneration_form(2, 1, t, F16)).format()
        expected = "N3+1" if (t != 0 and F16.pow_(t, 3) == 1) else "N4"
        assert got == expected, (t, got)


def test_n4_degeneration_family_q3():
    F81 = make_field(3, 4)
    assert classify(n4_degeneration_form(3, 1, 1, F81)).format() == "N3+1"
    assert classify(n4_degeneration_form(3, 1, 0, F81)).format() == "N4"
    g = F81.generator
    assert classify(n4_degeneration_form(3, 1, g, F81)).format() == "N4"


def test_cone_types_have_radical(F16):
    for text, rad_dim in (("N1+1+1", 1), ("N1+N1+1", 2), ("N1+N2", 1)):
        f = standard_gram(TypeSignature.parse(text), F16, 1)
        assert f.radical().dim == rad_dim
        assert classify(f).format() == text


def test_ambiguous_match_is_raised_on_collision(monkeypatch):
    # force a fake collision by shrinking the profile to the rank alone
    from qbic import forms as forms_mod

    def rank_only_profile(self):
        return forms_mod.FiltrationProfile(self.rank(), (), (), (), ())

    monkeypatch.setattr(forms_mod.QBicForm, "invariant_profile", rank_only_profile)
    forms_mod._profile_table.cache_clear()
    with pytest.raises(AmbiguousMatch):
        forms_mod._profile_table(2, 1, 3)
    forms_mod._profile_table.cache_clear()
