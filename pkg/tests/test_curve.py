import pytest

from flatcurve import (
    CurveError,
    PlaneCurve,
    RealizabilityError,
    TRIVIAL,
    canonical_key,
    census,
    euler_characteristic,
    faces,
    format_gauss_code,
    from_gauss_code,
    gauss_even,
    hagge_yazinski,
    interlaced_pairs,
    is_equivalent,
    kink_chain,
    p_family,
    parse_gauss_code,
    read_curve,
    realizations,
    to_gauss_code,
    torus_2q,
    validate,
    write_curve,
)
from flatcurve.curve import CombinatorialMap, curve_from_canonical_form, canonical_form

from oracles import invariant_violations, map_key


# -- validation and faces ------------------------------------------------


def test_trivial_curve_is_valid_with_two_faces():
    report = validate(TRIVIAL)
    assert report.ok
    assert report.vertices == 0
    assert report.faces == 2
    assert len(faces(TRIVIAL)) == 2
    assert euler_characteristic(TRIVIAL) == 2


def test_kink_has_three_faces():
    c = from_gauss_code("1 1")
    assert c.num_vertices == 1
    assert len(c.faces) == 3
    assert c.face_degrees() == [1, 1, 2]


def test_two_crossing_curves_satisfy_euler():
    for word in ("1 1 2 2", "1 2 2 1"):
        c = from_gauss_code(word)
        report = validate(c)
        assert report.ok
        assert (report.vertices, report.edges, report.faces) == (2, 4, 4)


def test_alternating_two_crossing_word_is_not_planar():
    # "1 2 1 2" has each chord interlacing one other chord: odd, so no sphere embedding
    assert not gauss_even([1, 2, 1, 2])
    with pytest.raises(RealizabilityError):
        from_gauss_code("1 2 1 2")
    assert list(realizations([1, 2, 1, 2])) == []
    for signs in ({1: 1, 2: 1}, {1: 1, 2: -1}):
        with pytest.raises(RealizabilityError):
            from_gauss_code([1, 2, 1, 2], signs)


def test_trefoil_word_is_realizable():
    c = from_gauss_code("1 2 3 1 2 3")
    assert c.num_vertices == 3
    assert len(c.faces) == 5
    assert c.face_degrees() == [2, 2, 2, 3, 3]
    assert is_equivalent(c, torus_2q(1))


def test_p_family_1_4_has_18_faces():
    c = p_family(1, 4)
    assert len(faces(c)) == 18
    assert euler_characteristic(c) == 2


def test_two_component_map_is_rejected():
    # two disjoint-looking circles sharing two crossings: the Hopf link projection
    # vertices 0, 1; strand A uses darts 0/2, strand B uses darts 1/3
    alpha = [6, 7, 4, 5, 2, 3, 0, 1]
    report = validate(CombinatorialMap((1, 2), tuple(alpha)))
    assert not report.ok
    assert "not a single immersed circle" in report.violations


def test_broken_maps_are_rejected():
    assert not validate(CombinatorialMap((1,), (1, 0, 3))).ok  # not 4-regular
    assert not validate(CombinatorialMap((1,), (0, 2, 1, 3))).ok  # fixed darts
    assert not validate(CombinatorialMap((1,), (1, 2, 3, 0))).ok  # not an involution
    # a torus map: one vertex whose opposite darts are glued
    report = validate(CombinatorialMap((1,), (2, 3, 0, 1)))
    assert not report.ok


def test_faces_rejects_invalid_curve():
    bad = PlaneCurve((1, -1, 2), {1: 1, 2: 1})
    assert bad.token_problems()
    with pytest.raises(CurveError):
        faces(bad)
    with pytest.raises(CurveError):
        PlaneCurve.from_tokens((1, -1, 2), {1: 1, 2: 1})


def test_face_counts_match_independent_tracer():
    for _, c in census(5):
        assert invariant_violations(c) == []
        assert len(c.faces) == c.num_vertices + 2


# -- canonical keys -------------------------------------------------------


def test_relabeling_and_rotation_preserve_key():
    c = torus_2q(2)
    ren = {x: 10 + 3 * x for x in c.labels}
    d = c.relabel(ren)
    assert canonical_key(c) == canonical_key(d)
    toks = list(c.tokens)
    e = PlaneCurve(toks[3:] + toks[:3], c.chirality)
    assert canonical_key(c) == canonical_key(e)


def test_reversal_and_mirror_preserve_key():
    c = p_family(1, 4)
    rev = PlaneCurve(tuple(reversed(c.tokens)), c.chirality)
    assert canonical_key(c) == canonical_key(rev)
    assert canonical_key(c) == canonical_key(c.mirror())


def test_distinct_curves_have_distinct_keys():
    assert canonical_key(from_gauss_code("1 1")) != canonical_key(TRIVIAL)
    assert canonical_key(from_gauss_code("1 1 2 2")) != canonical_key(from_gauss_code("1 2 2 1"))


def test_key_agrees_with_map_isomorphism_oracle():
    classes = census(5)
    keys = [k for k, _ in classes]
    oracle = [map_key(c) for _, c in classes]
    assert len(set(keys)) == len(keys) == len(set(oracle))
    # strict keys: two curves agree iff their orientation-preserving maps agree
    strict = {}
    for _, c in classes:
        for d in (c, c.mirror()):
            strict.setdefault(canonical_key(d, mirror=False), set()).add(map_key(d, mirror=False))
    assert all(len(v) == 1 for v in strict.values())


def test_canonical_form_round_trip():
    for _, c in census(4):
        form = canonical_form(c.tokens, c.chirality)
        assert canonical_key(curve_from_canonical_form(form)) == canonical_key(c)


def test_is_equivalent_examples():
    assert is_equivalent(TRIVIAL, TRIVIAL)
    k = kink_chain(1)
    assert is_equivalent(k, k.mirror())
    assert is_equivalent(k, k.mirror(), mirror=False)
    assert is_equivalent(p_family(1, 4), hagge_yazinski())
    assert not is_equivalent(torus_2q(1), kink_chain(3))


# -- Gauss codes ----------------------------------------------------------


def test_gauss_code_examples():
    assert to_gauss_code(TRIVIAL).word == ()
    code = to_gauss_code(kink_chain(1))
    assert code.word == (1, 1)
    assert set(code.signs) == {1}
    assert len(to_gauss_code(p_family(1, 4)).word) == 32


def test_gauss_code_text_round_trip(tmp_path):
    for c in (TRIVIAL, kink_chain(2), torus_2q(2), p_family(1, 4)):
        path = tmp_path / "c.gc"
        write_curve(c, path)
        back = read_curve(path)
        assert back == c
        assert canonical_key(back) == canonical_key(c)


def test_parse_gauss_code_comments_and_errors():
    code = parse_gauss_code("# a kink\n1 1  # word\n1:+\n")
    assert code.word == (1, 1) and code.signs == {1: 1}
    assert parse_gauss_code("").word == ()
    for bad in ("1 x 1", "1 1\n1:?", "1 1\n1:+\n2 2"):
        with pytest.raises(CurveError):
            parse_gauss_code(bad)
    with pytest.raises(CurveError):
        from_gauss_code("1 2 1")
    with pytest.raises(CurveError):
        from_gauss_code([1, 1], {2: 1})


def test_unsigned_word_fixes_first_crossing_chirality():
    c = from_gauss_code("1 2 3 1 2 3")
    assert c.chirality[1] == 1
    assert from_gauss_code(format_gauss_code(c)) == c


def test_interlacement():
    assert interlaced_pairs([1, 2, 3, 1, 2, 3]) == {1: {2, 3}, 2: {1, 3}, 3: {1, 2}}
    assert gauss_even([1, 2, 3, 1, 2, 3])
