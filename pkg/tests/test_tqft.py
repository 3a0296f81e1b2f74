import pytest

from repvar.affc import affc_datum
from repvar.finite_group import conjugacy_classes, named_group, to_tqft_datum
from repvar.poly import LaurentPoly, NonExactDivision, ONE, Q, ZERO
from repvar.tqft import (
    GENUS_TUBE,
    IDENTITY_TUBE,
    InvalidDatum,
    SurfaceSpec,
    TqftDatum,
    TubeGenerator,
    TubeWord,
    UnknownPunctureLabel,
    assemble_word,
    datum_from_json_dict,
    datum_to_json_dict,
    epoly_from_word,
    epoly_rep_variety,
    evaluate_raw,
    insert_identity_tubes,
    load_datum,
    mat_identity,
    mat_mul,
    mat_pow,
    puncture_tube,
    save_datum,
)


def rank_one_datum(e_g=None, genus_entry=None, **overrides):
    """Tiny hand-built datum for structural tests."""
    fields = dict(
        rank=1,
        e_g=e_g if e_g is not None else ONE,
        genus_tube=((genus_entry if genus_entry is not None else ONE,),),
        puncture_tubes={},
        identity_tube=None,
        disc_in=(ONE,),
        disc_out=(ONE,),
    )
    fields.update(overrides)
    return TqftDatum(**fields)


class TestWords:
    def test_assemble_closed_surface(self):
        word = assemble_word(SurfaceSpec(2))
        assert word.generators == (GENUS_TUBE, GENUS_TUBE)
        assert word.tube_count == 2

    def test_assemble_sphere(self):
        word = assemble_word(SurfaceSpec(0))
        assert word.generators == ()
        assert word.tube_count == 0

    def test_assemble_punctured_torus(self):
        word = assemble_word(SurfaceSpec(1, ("t",)))
        assert word.generators == (GENUS_TUBE, puncture_tube("t"))
        assert word.tube_count == 2

    def test_insert_identity_tubes(self):
        assert insert_identity_tubes(TubeWord.of([]), 1).generators == (IDENTITY_TUBE,)
        word = insert_identity_tubes(TubeWord.of([GENUS_TUBE]), 2)
        assert word.generators == (GENUS_TUBE, IDENTITY_TUBE, IDENTITY_TUBE)
        assert word.tube_count == 3

    def test_tube_count_must_match(self):
        with pytest.raises(ValueError):
            TubeWord((GENUS_TUBE,), 2)

    def test_negative_genus_rejected(self):
        with pytest.raises(ValueError):
            SurfaceSpec(-1)

    def test_generator_validation(self):
        with pytest.raises(ValueError):
            TubeGenerator("pair_of_pants")
        with pytest.raises(ValueError):
            TubeGenerator("genus", "spurious-label")
        with pytest.raises(ValueError):
            TubeGenerator("puncture")


class TestMatrixAlgebra:
    def test_identity_power(self):
        m = affc_datum().genus_tube
        assert mat_pow(m, 0) == mat_identity(2)
        assert mat_pow(m, 1) == m

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            mat_pow(mat_identity(2), -1)

    @pytest.mark.parametrize("k", range(7))
    def test_power_matches_iterated_mul_affc(self, k):
        m = affc_datum().genus_tube
        expected = mat_identity(2)
        for _ in range(k):
            expected = mat_mul(expected, m)
        assert mat_pow(m, k) == expected

    @pytest.mark.parametrize("k", range(7))
    def test_power_matches_iterated_mul_finite(self, k):
        m = to_tqft_datum(named_group("s3")).genus_tube
        expected = mat_identity(6)
        for _ in range(k):
            expected = mat_mul(expected, m)
        assert mat_pow(m, k) == expected


class TestDatumValidation:
    def test_rank_positive(self):
        with pytest.raises(InvalidDatum):
            rank_one_datum(rank=0, genus_tube=(), disc_in=(), disc_out=())

    def test_square_matrices_required(self):
        with pytest.raises(InvalidDatum):
            rank_one_datum(genus_tube=((ONE, ONE),))
        with pytest.raises(InvalidDatum):
            rank_one_datum(puncture_tubes={"t": ((ONE, ZERO), (ZERO, ONE))})
        with pytest.raises(InvalidDatum):
            rank_one_datum(identity_tube=((ONE, ZERO),))

    def test_disc_lengths(self):
        with pytest.raises(InvalidDatum):
            rank_one_datum(disc_in=(ONE, ZERO))
        with pytest.raises(InvalidDatum):
            rank_one_datum(disc_out=())

    def test_group_class_nonzero(self):
        with pytest.raises(InvalidDatum):
            rank_one_datum(e_g=ZERO)

    def test_sphere_normalization(self):
        with pytest.raises(InvalidDatum) as err:
            rank_one_datum(disc_in=(Q,))
        assert "sphere" in str(err.value)

    def test_identity_tube_consistency(self):
        # cup . P . cap must equal e_G
        with pytest.raises(InvalidDatum) as err:
            rank_one_datum(e_g=LaurentPoly.const(2), identity_tube=((ONE,),))
        assert "identity-tube" in str(err.value)
        rank_one_datum(e_g=LaurentPoly.const(2), identity_tube=((LaurentPoly.const(2),),))


class TestEvaluation:
    def test_empty_word_is_one(self):
        for datum in (affc_datum(), to_tqft_datum(named_group("s3"))):
            assert evaluate_raw(datum, TubeWord.of([])) == ONE

    def test_sphere_normalizes_to_one(self):
        for datum in (affc_datum(), to_tqft_datum(named_group("q8"))):
            assert epoly_rep_variety(datum, SurfaceSpec(0)) == ONE

    def test_plain_cylinder_counts_group_order(self):
        group = named_group("s3")
        datum = to_tqft_datum(group)
        raw = evaluate_raw(datum, TubeWord.of([IDENTITY_TUBE]))
        assert raw == LaurentPoly.const(group.order)

    def test_unknown_puncture_label(self):
        datum = affc_datum()
        with pytest.raises(UnknownPunctureLabel):
            epoly_rep_variety(datum, SurfaceSpec(0, ("nope",)))

    def test_missing_identity_tube(self):
        datum = affc_datum()
        word = insert_identity_tubes(TubeWord.of([]), 1)
        with pytest.raises(InvalidDatum):
            evaluate_raw(datum, word)

    def test_normalization_counts_all_tubes(self):
        # Appending plain cylinders scales the raw value by e_G each time
        # and the tube count rises in step, so the quotient is unchanged.
        group = named_group("d4")
        datum = to_tqft_datum(group)
        word = assemble_word(SurfaceSpec(1))
        base = epoly_from_word(datum, word)
        for k in (1, 2):
            padded = insert_identity_tubes(word, k)
            assert epoly_from_word(datum, padded) == base

    def test_inconsistent_datum_divides_inexactly(self):
        datum = rank_one_datum(e_g=Q - 1)
        with pytest.raises(NonExactDivision):
            epoly_rep_variety(datum, SurfaceSpec(1))

    def test_unit_group_class_divides_into_negative_exponents(self):
        # Unit monomials are invertible in the Laurent ring, so a raw value
        # of 1 normalized by e_G = q is legal and lands at q^-1.
        datum = rank_one_datum(e_g=Q)
        result = epoly_rep_variety(datum, SurfaceSpec(1))
        assert result == LaurentPoly.monomial(-1, -1)

    def test_division_exactness_across_backends(self):
        # No NonExactDivision anywhere in g <= 6, s <= 3.
        for g in range(7):
            epoly_rep_variety(affc_datum(), SurfaceSpec(g))
        group = named_group("s3")
        classes = conjugacy_classes(group)
        datum = to_tqft_datum(group, {"t": classes.members[1], "r": classes.members[2]})
        for g in range(7):
            for punctures in [(), ("t",), ("t", "r"), ("t", "r", "t")]:
                result = epoly_rep_variety(datum, SurfaceSpec(g, punctures))
                assert result.is_constant()

    def test_puncture_order_does_not_change_the_scalar(self):
        # Not a structural guarantee, but it holds for group data; pin it.
        group = named_group("d4")
        classes = conjugacy_classes(group)
        datum = to_tqft_datum(
            group, {"a": classes.members[1], "b": classes.members[4]}
        )
        results = set()
        for punctures in [("a", "b"), ("b", "a")]:
            results.add(epoly_rep_variety(datum, SurfaceSpec(2, punctures)))
        assert len(results) == 1

    def test_interleaving_punctures_with_genus_tubes(self):
        group = named_group("s3")
        classes = conjugacy_classes(group)
        datum = to_tqft_datum(group, {"t": classes.members[1]})
        straight = assemble_word(SurfaceSpec(2, ("t",)))
        shuffled = TubeWord.of(
            [GENUS_TUBE, puncture_tube("t"), GENUS_TUBE]
        )
        assert epoly_from_word(datum, straight) == epoly_from_word(datum, shuffled)


class TestDatumFiles:
    def test_round_trip_in_memory(self):
        group = named_group("s3")
        classes = conjugacy_classes(group)
        datum = to_tqft_datum(group, {"t": classes.members[1]})
        again = datum_from_json_dict(datum_to_json_dict(datum))
        assert again == datum

    def test_round_trip_on_disk(self, tmp_path):
        datum = affc_datum()
        path = tmp_path / "affc.json"
        save_datum(datum, path)
        loaded = load_datum(path)
        assert loaded == datum
        assert epoly_rep_variety(loaded, SurfaceSpec(1)) == Q**3 - Q**2

    def test_identity_tube_key_is_optional(self):
        data = datum_to_json_dict(affc_datum())
        assert "P" not in data
        data_with_p = datum_to_json_dict(to_tqft_datum(named_group("z2")))
        assert "P" in data_with_p

    def test_missing_keys(self):
        with pytest.raises(InvalidDatum):
            datum_from_json_dict({"rank": 1})

    def test_bad_polynomial_text(self):
        data = datum_to_json_dict(affc_datum())
        data["e_G"] = "totally not a polynomial"
        with pytest.raises(InvalidDatum):
            datum_from_json_dict(data)

    def test_non_object(self):
        with pytest.raises(InvalidDatum):
            datum_from_json_dict([1, 2, 3])

    def test_structural_invariants_checked_on_load(self):
        data = datum_to_json_dict(affc_datum())
        data["disc_out"] = ["0", "0"]
        with pytest.raises(InvalidDatum):
            datum_from_json_dict(data)
