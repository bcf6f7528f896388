"""Parser and domain-type tests."""

import pytest

from beecover import (ParameterSystem, SpecSemanticError, SpecSyntaxError,
                      StrengthSpec, SubConfiguration, TestCase, canonical_spec,
                      parse_spec, validate_test_case)


class TestParseSpec:
    def test_uniform_ca(self):
        system, spec = parse_spec("CA(N;2,3^4)")
        assert system.cardinalities == (3, 3, 3, 3)
        assert spec.main_strength == 2
        assert spec.subs == ()

    def test_mixed_mca(self):
        system, spec = parse_spec("MCA(N;2,3^6 2^4)")
        assert system.cardinalities == (3,) * 6 + (2,) * 4
        assert spec.main_strength == 2

    def test_vsca_positional_sub(self):
        system, spec = parse_spec("VSCA(N;2,3^15,{CA(3,3^3)})")
        assert system.cardinalities == (3,) * 15
        assert spec.main_strength == 2
        assert spec.subs == (SubConfiguration(columns=(0, 1, 2), strength=3),)

    def test_strength_exceeds_parameters(self):
        with pytest.raises(SpecSemanticError):
            parse_spec("CA(N;5,3^4)")

    def test_whitespace_insensitive(self):
        a = parse_spec("CA( N ; 2 , 3^4 )")
        b = parse_spec("CA(N;2,3^4)")
        assert a == b
        c = parse_spec("VSCA(N; 2, 3^15, { CA(3, 3^3) })")
        assert c == parse_spec("VSCA(N;2,3^15,{CA(3,3^3)})")

    def test_explicit_column_list(self):
        _, spec = parse_spec("VSCA(N;2,3^5,{CA(3,[0,2,4])})")
        assert spec.subs[0].columns == (0, 2, 4)
        assert spec.subs[0].strength == 3

    def test_consecutive_binding_of_multiple_subs(self):
        _, spec = parse_spec("VSCA(N;2,3^9,{CA(3,3^3),CA(3,3^4)})")
        assert spec.subs[0].columns == (0, 1, 2)
        assert spec.subs[1].columns == (3, 4, 5, 6)

    def test_mca_keyword_in_sub(self):
        system, spec = parse_spec("VSCA(N;2,4^3 5^3 6^2,{MCA(3,4^3 5^2)})")
        assert system.cardinalities == (4, 4, 4, 5, 5, 5, 6, 6)
        assert spec.subs[0].columns == (0, 1, 2, 3, 4)

    def test_sub_cardinality_mismatch(self):
        with pytest.raises(SpecSemanticError):
            parse_spec("VSCA(N;2,3^4 2^2,{CA(3,2^3)})")

    def test_sub_column_out_of_range(self):
        with pytest.raises(SpecSemanticError):
            parse_spec("VSCA(N;2,3^4,{CA(2,[1,5])})")

    def test_sub_strength_above_width(self):
        with pytest.raises(SpecSemanticError):
            parse_spec("VSCA(N;2,3^6,{CA(4,3^3)})")

    @pytest.mark.parametrize("bad", [
        "CA(N,2,3^4)",        # comma instead of semicolon after N
        "CA(N;2,3^4",         # unterminated
        "CA(N;2,3)",          # group missing exponent
        "XYZ(N;2,3^4)",       # unknown keyword
        "CA(N;2,3^4) junk",   # trailing input
        "CA(N;2,3^^4)",
        "",
    ])
    def test_syntax_errors(self, bad):
        with pytest.raises(SpecSyntaxError):
            parse_spec(bad)

    @pytest.mark.parametrize("bad", [
        "CA(N;2,1^3)",        # cardinality below 2
        "CA(N;2,3^1)",        # single parameter
        "CA(N;1,3^4)",        # strength below 2
        "CA(N;2,3^0 2^2)",    # zero-width group
    ])
    def test_semantic_errors(self, bad):
        with pytest.raises(SpecSemanticError):
            parse_spec(bad)


class TestCanonicalSpec:
    @pytest.mark.parametrize("text", [
        "CA(N;2,3^4)",
        "MCA(N;2,3^6 2^4)",
        "MCA(N;3,10^1 9^1 8^1 7^1)",
        "VSCA(N;2,3^15,{CA(3,3^3)})",
        "VSCA(N;2,3^9,{CA(3,3^3),CA(4,3^4)})",
        "VSCA(N;2,3^5,{CA(3,[0,2,4])})",
    ])
    def test_round_trip(self, text):
        system, spec = parse_spec(text)
        again = parse_spec(canonical_spec(system, spec))
        assert again == (system, spec)

    def test_expansion_grid(self):
        # v^P expands to exactly P parameters of cardinality v
        for v in range(2, 11):
            for p in range(2, 13):
                for t in range(2, p + 1):
                    system, spec = parse_spec(f"CA(N;{t},{v}^{p})")
                    assert system.cardinalities == (v,) * p
                    assert spec.main_strength == t


class TestDomainTypes:
    def test_system_needs_two_parameters(self):
        with pytest.raises(SpecSemanticError):
            ParameterSystem(cardinalities=(3,))

    def test_system_needs_cardinality_two(self):
        with pytest.raises(SpecSemanticError):
            ParameterSystem(cardinalities=(3, 1))

    def test_sub_columns_strictly_increasing(self):
        with pytest.raises(SpecSemanticError):
            SubConfiguration(columns=(2, 2, 3), strength=2)

    def test_strength_spec_minimum(self):
        with pytest.raises(SpecSemanticError):
            StrengthSpec(main_strength=1)


class TestValidateTestCase:
    def setup_method(self):
        self.system = ParameterSystem(cardinalities=(3, 3, 3, 3))

    def test_ok(self):
        assert validate_test_case(TestCase((0, 1, 2, 0)), self.system) == []

    def test_out_of_range(self):
        problems = validate_test_case(TestCase((0, 3, 0, 0)), self.system)
        assert len(problems) == 1
        assert "index 1" in problems[0]

    def test_length_mismatch(self):
        problems = validate_test_case(TestCase(()), ParameterSystem((3, 3)))
        assert len(problems) == 1
        assert "length mismatch" in problems[0]

    def test_reports_every_violation(self):
        problems = validate_test_case(TestCase((5, 0, -1, 9)), self.system)
        assert len(problems) == 3
