import json
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apolar.forms import (
    add_forms,
    form_from_terms,
    parse_form,
    power_of_linear,
    random_form,
    scale_form,
)
from apolar.linalg import EXACT_POLICY
from apolar.modules import (
    InverseSystem,
    annihilator_component,
    catalecticant,
    derivative_space,
    first_degree_generator_count,
    h_vector,
    level_type,
    load_system,
    save_system,
    system_from_dict,
    system_to_dict,
)
from apolar.hvectors import is_o_sequence

from conftest import PROP8_H, SINGLE_FORM_H


def system(*texts, r=3):
    return InverseSystem(r, tuple(parse_form(t, ambient=r) for t in texts))


def test_derivative_space_product_of_variables():
    M = system("y1*y2", r=2)
    basis = derivative_space(M, 1)
    assert basis.dimension == 2
    assert {form_to_terms(f) for f in basis.forms} == {((1, 0),), ((0, 1),)}


def form_to_terms(f):
    return tuple(sorted(f.terms))


def test_h_vector_single_power():
    for e in (2, 4, 6):
        M = system(f"y3^{e}")
        assert h_vector(M) == (1,) * (e + 1)


def test_h_vector_example7_pattern(example7_systems):
    assert h_vector(example7_systems[3]) == (1, 3, 5, 5)
    assert h_vector(example7_systems[4]) == (1, 3, 5, 6, 6)
    assert h_vector(example7_systems[5]) == (1, 3, 5, 6, 7, 7)


def test_h_vector_prop8(prop8_system):
    assert h_vector(prop8_system) == PROP8_H


def test_generic_form_h_vector_and_symmetry():
    for seed in range(5):
        M = InverseSystem(3, (random_form(3, 9, seed),))
        h = h_vector(M)
        assert h == SINGLE_FORM_H
        assert all(h[i] == h[9 - i] for i in range(10))


def test_derivative_space_above_socle_degree_is_empty():
    M = system("y1^2")
    assert derivative_space(M, 3).dimension == 0


def test_derivative_space_dimension_matches_h(example7_systems):
    M = example7_systems[4]
    h = h_vector(M)
    for i, hi in enumerate(h):
        assert derivative_space(M, i).dimension == hi


def test_catalecticant_product():
    F = parse_form("y1*y2", ambient=2)
    m = catalecticant(F, 1)
    assert [m.row(0), m.row(1)] == [[0, 1], [1, 0]]


def test_catalecticant_square_rank_one():
    from apolar.linalg import rank

    F = parse_form("y1^2", ambient=2)
    assert rank(catalecticant(F, 1)) == 1


def test_catalecticant_generic_middle_rank():
    from apolar.linalg import rank

    for seed in range(5):
        F = random_form(3, 9, seed)
        assert rank(catalecticant(F, 4)) == comb(6, 2) == 15


def test_annihilator_square():
    M = system("y1^2", r=2)
    basis = annihilator_component(M, 1)
    assert len(basis) == 1
    assert basis[0].terms == {(0, 1): 1}


def test_annihilator_prop8_degree_two(prop8_system):
    basis = annihilator_component(prop8_system, 2)
    assert len(basis) == 1
    assert basis[0].terms == {(0, 1, 1): 1}


def test_annihilator_rank_nullity(prop8_system, example7_systems):
    for M in (prop8_system, example7_systems[3]):
        h = h_vector(M)
        for d in range(M.socle_degree + 1):
            dim_ann = len(annihilator_component(M, d))
            assert dim_ann + h[d] == comb(M.ambient - 1 + d, d)


def test_annihilator_above_socle_is_everything():
    M = system("y1^2", r=2)
    assert len(annihilator_component(M, 3)) == 4


def test_annihilator_kills_generators(prop8_system):
    from apolar.forms import differentiate

    for d in (2, 5):
        for a in annihilator_component(prop8_system, d):
            for g in prop8_system.generators:
                img = {}
                for m, c in a.terms.items():
                    df = differentiate(g, m)
                    for u, cu in df.terms.items():
                        img[u] = img.get(u, Fraction(0)) + c * cu
                assert all(v == 0 for v in img.values())


def test_prop8_minimal_generator_counts(prop8_system):
    # one quadric, two quintics, three sextics
    assert first_degree_generator_count(prop8_system, 2) == 1
    assert first_degree_generator_count(prop8_system, 3) == 0
    assert first_degree_generator_count(prop8_system, 4) == 0
    assert first_degree_generator_count(prop8_system, 5) == 2
    assert first_degree_generator_count(prop8_system, 6) == 3


def test_level_type_two_powers():
    assert level_type(system("y1^3", "y2^3")) == 2


def test_level_type_mixed_degrees():
    with pytest.raises(ValueError, match="not a level presentation"):
        level_type(system("y1^3", "y2^2"))


def test_level_type_dependent_generators():
    f = parse_form("y1^3", ambient=3)
    M = InverseSystem(3, (f, scale_form(2, f)))
    with pytest.raises(ValueError, match="non-minimal generating set"):
        level_type(M)


def test_level_type_example2(example2_system):
    assert level_type(example2_system) == 28


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.integers(2, 5))
def test_gorenstein_symmetry_of_single_generator(seed, d):
    h = h_vector(InverseSystem(3, (random_form(3, d, seed),)))
    assert all(h[i] == h[d - i] for i in range(d + 1))


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_h_vector_invariant_under_generator_mixing(seed):
    f = random_form(3, 4, seed)
    g = random_form(3, 4, seed + 10**7)
    M = InverseSystem(3, (f, g))
    # invertible integer combination of the generators
    f2 = add_forms(f, scale_form(2, g))
    g2 = add_forms(f2, g)  # det of [[1,2],[1,3]] is 1
    M2 = InverseSystem(3, (f2, g2))
    assert h_vector(M) == h_vector(M2)


def test_powers_fast_path_matches_generic_rows():
    # same module with and without the power marker: identical basis and h
    pts = [(1, 2, 3), (2, -1, 1), (0, 1, 1), (5, 1, -2)]
    fast = InverseSystem(3, tuple(power_of_linear(p, 5) for p in pts))
    slow = InverseSystem(
        3,
        tuple(
            form_from_terms(3, 5, power_of_linear(p, 5).terms) for p in pts
        ),
    )
    assert all(g.power_base is not None for g in fast.generators)
    assert all(g.power_base is None for g in slow.generators)
    assert h_vector(fast) == h_vector(slow)
    for i in range(6):
        assert derivative_space(fast, i) == derivative_space(slow, i)


def test_h_vector_exact_mode(example7_systems, prop8_system):
    for M in (example7_systems[5], prop8_system):
        assert h_vector(M, EXACT_POLICY) == h_vector(M)


def test_every_h_is_an_o_sequence(example7_systems, prop8_system, example2_system):
    for M in (*example7_systems.values(), prop8_system, example2_system):
        assert is_o_sequence(h_vector(M))


def test_json_round_trip(prop8_system, tmp_path):
    path = tmp_path / "m.json"
    save_system(prop8_system, path)
    again = load_system(path)
    assert again == prop8_system


def test_json_round_trip_rational():
    M = InverseSystem(2, (parse_form("1/3*y1^2 - 7/2*y1*y2", ambient=2),))
    blob = json.dumps(system_to_dict(M))
    assert system_from_dict(json.loads(blob)) == M


def test_json_schema_shape(example7_systems):
    data = system_to_dict(example7_systems[3])
    assert data["r"] == 3
    assert all(set(g) == {"degree", "terms"} for g in data["generators"])
    assert all(
        set(t) == {"exps", "coeff"} for g in data["generators"] for t in g["terms"]
    )


def test_system_validation():
    with pytest.raises(ValueError):
        InverseSystem(3, ())
    with pytest.raises(ValueError):
        InverseSystem(2, (parse_form("y1^2", ambient=3),))  # ambient mismatch
