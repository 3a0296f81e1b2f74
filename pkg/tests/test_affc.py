import pytest

from repvar.affc import (
    AFFC_E_GROUP,
    affc_closed_form,
    affc_datum,
    affc_inner_genus_matrix,
    xk_epoly,
)
from repvar.poly import ONE, Q, ZERO
from repvar.tqft import (
    GENUS_TUBE,
    SurfaceSpec,
    TubeWord,
    dot,
    epoly_rep_variety,
    evaluate_raw,
    mat_pow,
    mat_vec,
)


class TestDatumEntries:
    def test_group_class(self):
        assert AFFC_E_GROUP == Q**2 - Q
        assert affc_datum().e_g == Q * (Q - 1)

    def test_genus_tube_matrix(self):
        m = affc_datum().genus_tube
        f = Q * (Q - 1)
        assert m[0][0] == f * (Q**3 - Q**2)
        assert m[1][0] == f * (Q**3 - 2 * Q**2)
        assert m[0][1] == f * (Q**4 - 3 * Q**3 + 2 * Q**2)
        assert m[1][1] == f * (Q**4 - 3 * Q**3 + 3 * Q**2)

    def test_disc_vectors(self):
        datum = affc_datum()
        assert datum.disc_in == (ONE, ZERO)
        assert datum.disc_out == (ONE, ZERO)
        assert datum.rank == 2
        assert datum.identity_tube is None
        assert datum.puncture_tubes == {}


class TestRawEvaluation:
    def test_single_genus_tube(self):
        # The cup projects onto the first coordinate of the matrix's
        # first column.
        raw = evaluate_raw(affc_datum(), TubeWord.of([GENUS_TUBE]))
        assert raw == Q * (Q - 1) * (Q**3 - Q**2)

    def test_empty_word(self):
        assert evaluate_raw(affc_datum(), TubeWord.of([])) == ONE


class TestClosedForm:
    def test_genus_one(self):
        assert affc_closed_form(1) == Q**3 - Q**2
        assert affc_closed_form(1) == Q**2 * (Q - 1)

    def test_genus_two(self):
        assert affc_closed_form(2) == Q**3 * ((Q - 1) ** 4 + Q - 1)

    def test_genus_must_be_positive(self):
        with pytest.raises(ValueError):
            affc_closed_form(0)


class TestRecursion:
    def test_base_case(self):
        assert xk_epoly(1) == 2 * Q - 2

    def test_second_value(self):
        assert xk_epoly(2) == Q**2 * (Q - 1)
        assert xk_epoly(2) == affc_closed_form(1)

    def test_index_must_be_positive(self):
        with pytest.raises(ValueError):
            xk_epoly(0)

    @pytest.mark.parametrize("genus", range(1, 7))
    def test_even_index_matches_closed_form(self, genus):
        assert xk_epoly(2 * genus) == affc_closed_form(genus)


class TestEngineAgreement:
    @pytest.mark.parametrize("genus", range(1, 7))
    def test_engine_equals_closed_form(self, genus):
        result = epoly_rep_variety(affc_datum(), SurfaceSpec(genus))
        assert result == affc_closed_form(genus)

    @pytest.mark.parametrize("genus", range(2, 7))
    def test_genus_step_recursion(self, genus):
        # e(g) = q^(2g) (q-1)^(2g-2) (q-2) + q^2 e(g-1), rooted at q^3 - q^2.
        datum = affc_datum()
        current = epoly_rep_variety(datum, SurfaceSpec(genus))
        previous = epoly_rep_variety(datum, SurfaceSpec(genus - 1))
        step = Q ** (2 * genus) * (Q - 1) ** (2 * genus - 2) * (Q - 2)
        assert current == step + Q**2 * previous
        assert epoly_rep_variety(datum, SurfaceSpec(1)) == Q**3 - Q**2

    @pytest.mark.parametrize("genus", range(0, 7))
    def test_outputs_are_pure_q_polynomials(self, genus):
        assert epoly_rep_variety(affc_datum(), SurfaceSpec(genus)).is_diagonal()

    @pytest.mark.parametrize("genus", range(1, 7))
    def test_precancelled_route_agrees(self, genus):
        # Evaluating the matrix without its overall q(q-1) factor needs no
        # normalization division at all; both routes must coincide.
        inner = affc_inner_genus_matrix()
        datum = affc_datum()
        vec = mat_vec(mat_pow(inner, genus), datum.disc_in)
        direct = dot(datum.disc_out, vec)
        assert direct == epoly_rep_variety(datum, SurfaceSpec(genus))
