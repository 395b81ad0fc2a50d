from __future__ import annotations

import random

import pytest

from biframe.errors import InvalidMoveError, PresentationError
from biframe.harness import lk_component_count
from biframe.presentation import (
    Circle,
    Handlebody,
    MoveScript,
    Presentation,
    pairing_presentation,
)


def two_circle(framings=(1, 1), link=0):
    return Presentation.assemble(
        surgery=[("K1", framings[0]), ("K2", framings[1])],
        links={("K1", "K2"): link} if link else {},
    )


class TestValidation:
    def test_asymmetric_matrix_rejected(self):
        with pytest.raises(PresentationError):
            Presentation(
                circles=(Circle("a", 0), Circle("b", 0)),
                lk=((0, 1), (2, 0)),
                circle_piece=(0, 0),
            )

    def test_diagonal_must_match_framing(self):
        with pytest.raises(PresentationError):
            Presentation(
                circles=(Circle("a", 1),),
                lk=((0,),),
                circle_piece=(0,),
            )

    def test_duplicate_names_rejected(self):
        with pytest.raises(PresentationError):
            Presentation.assemble(surgery=[("K", 0), ("K", 1)])

    def test_longitudes_precede_surgery(self):
        with pytest.raises(PresentationError):
            Presentation(
                handlebodies=(Handlebody("H", 1),),
                circles=(Circle("K", 0), Circle("H.1", 0, (0, 1))),
                lk=((0, 0), (0, 0)),
                hb_piece=(0,),
                circle_piece=(0, 0),
            )

    def test_unknown_link_name(self):
        with pytest.raises(PresentationError):
            Presentation.assemble(surgery=[("K", 0)], links={("K", "nope"): 1})


class TestSignatureHomology:
    def test_spec_examples(self):
        assert Presentation.empty().signature() == 0
        assert Presentation.assemble(surgery=[("K", 1)]).signature() == 1
        p = two_circle((2, 2), 1)
        assert p.signature() == 2
        assert p.first_homology() == [3]

    def test_homology_examples(self):
        assert Presentation.assemble(surgery=[("K", 0)]).first_homology() == [0]
        assert Presentation.assemble(surgery=[("K", 1)]).first_homology() == []

    def test_handlebodies_ignored(self):
        p = Presentation.assemble(
            handlebodies=[("H", 2)], surgery=[("K", 5)], links={("K", "H.1"): 3}
        )
        assert p.signature() == 1
        assert p.first_homology() == [5]


class TestBlowUpDown:
    def test_blow_up_appends_isolated_circle(self):
        p = Presentation.empty().blow_up(+1)
        assert p.surgery_count == 1
        assert p.signature() == 1
        q = p.blow_up(-1)
        assert q.signature() == 0

    def test_round_trip_is_exact_identity(self):
        base = two_circle((2, -1), 1)
        name = "X"
        assert base.blow_up(+1, name).blow_down(name) == base
        assert Presentation.empty().blow_up(-1, "B").blow_down("B") == Presentation.empty()

    def test_blow_down_requires_isolated_unit_framing(self):
        p = two_circle((1, 0), 1)
        with pytest.raises(InvalidMoveError):
            p.blow_down("K1")  # links K2
        p2 = two_circle((2, 1), 0)
        with pytest.raises(InvalidMoveError):
            p2.blow_down("K1")  # framing 2

    def test_cancelling_pair_macro(self):
        p = two_circle()
        q = p.blow_up_pair()
        assert q.surgery_count == p.surgery_count + 2
        assert q.signature() == p.signature()

    def test_sign_validation(self):
        with pytest.raises(InvalidMoveError):
            Presentation.empty().blow_up(2)


class TestSlide:
    def test_spec_arithmetic(self):
        p = two_circle((1, 1))
        q = p.slide("K1", "K2", +1)
        assert q.surgery_matrix() == [[2, 1], [1, 1]]
        assert q.signature() == p.signature() == 2

    def test_slide_back_restores(self):
        p = two_circle((3, -2), 1)
        q = p.slide("K1", "K2", +1).slide("K1", "K2", -1)
        assert q == p

    def test_longitude_may_slide_over_surgery(self):
        p = Presentation.assemble(
            handlebodies=[("H", 1)],
            surgery=[("K", 2)],
            links={("K", "H.1"): 1},
        )
        q = p.slide("H.1", "K", +1)
        k = q.circle_index("K")
        ell = q.circle_index("H.1")
        assert q.lk[ell][k] == 1 + 2
        assert q.lk[ell][ell] == 0 + 2 + 2 * 1

    def test_never_slide_over_longitude(self):
        p = Presentation.assemble(
            handlebodies=[("H", 1)], surgery=[("K", 0)]
        )
        with pytest.raises(InvalidMoveError):
            p.slide("K", "H.1", +1)

    def test_signature_invariant_under_many_slides(self):
        rng = random.Random(3)
        for trial in range(60):
            n = rng.randint(2, 5)
            p = Presentation.assemble(
                surgery=[(f"K{i}", rng.randint(-3, 3)) for i in range(n)],
                links={
                    (f"K{i}", f"K{j}"): rng.randint(-2, 2)
                    for i in range(n)
                    for j in range(i + 1, n)
                },
            )
            sig = p.signature()
            hom = p.first_homology()
            q = p
            for _ in range(20):
                i, j = rng.sample(range(n), 2)
                q = q.slide(f"K{i}", f"K{j}", rng.choice([1, -1]))
            assert q.signature() == sig
            assert q.first_homology() == hom


class TestUnionPermute:
    def test_union_with_empty_is_unit(self):
        p = two_circle((1, 2), 1)
        assert p.disjoint_union(Presentation.empty()) == p
        assert Presentation.empty().disjoint_union(p) == p

    def test_union_block_diagonal(self):
        p, q = two_circle((1, 0)), two_circle((0, -1), 2)
        u = p.disjoint_union(q)
        assert u.signature() == p.signature() + q.signature()
        assert sorted(u.first_homology()) == sorted(p.first_homology() + q.first_homology())
        assert u.num_pieces == 2

    def test_union_namespaces_collisions(self):
        p = two_circle()
        u = p.disjoint_union(p)
        names = [c.name for c in u.circles]
        assert len(set(names)) == 4

    def test_union_renames_handlebody_with_longitudes(self):
        p = Presentation.assemble(handlebodies=[("H", 2)])
        u = p.disjoint_union(p)
        assert [h.name for h in u.handlebodies] == ["H", "H'"]
        assert [c.name for c in u.circles] == ["H.1", "H.2", "H'.1", "H'.2"]

    def test_permute_round_trip(self):
        p = Presentation.assemble(
            handlebodies=[("A", 1), ("B", 2)],
            surgery=[("K", 1)],
            links={("K", "B.2"): 1},
        )
        assert p.permute([0, 1]) == p
        q = p.permute([1, 0])
        assert q.genera == (2, 1)
        assert q.permute([1, 0]) == p
        assert q.lk != p.lk  # longitude blocks moved

    def test_permute_requires_bijection(self):
        p = Presentation.assemble(handlebodies=[("A", 1), ("B", 1)])
        with pytest.raises(InvalidMoveError):
            p.permute([0, 0])


class TestPairing:
    def test_genus_zero(self):
        p = pairing_presentation(0)
        assert p.genera == (0, 0)
        assert p.circles == ()
        assert p.num_pieces == 1

    def test_genus_one_linking(self):
        p = pairing_presentation(1)
        s = p.circle_index("s1")
        assert p.lk[s][p.circle_index("P.1")] == 1
        assert p.lk[s][p.circle_index("Q.1")] == 1
        assert all(p.circles[i].framing == 0 for i in range(3))

    def test_genus_two_shape(self):
        p = pairing_presentation(2)
        assert p.surgery_count == 2
        assert p.total_genus == 4


class TestGlue:
    def test_sew_requires_matching_genus(self):
        p = Presentation.assemble(handlebodies=[("A", 1)])
        q = Presentation.assemble(handlebodies=[("B", 2)])
        with pytest.raises(InvalidMoveError):
            p.sew(q)

    def test_mend_requires_two_handlebodies(self):
        with pytest.raises(InvalidMoveError):
            Presentation.assemble(handlebodies=[("A", 1)]).mend()

    def test_sew_counts(self):
        p = pairing_presentation(1)
        q = pairing_presentation(1)
        s = p.sew(q)
        assert len(s.handlebodies) == 2
        assert s.surgery_count == 3  # s1, s1', one fused circle
        assert s.num_pieces == 1
        assert s.caps == 0

    def test_sew_genus_zero_is_bookkeeping(self):
        p = Presentation.assemble(handlebodies=[("A", 0), ("B", 0)], surgery=[("K", 1)])
        q = Presentation.assemble(handlebodies=[("C", 0)], surgery=[("J", -1)])
        s = p.sew(q)
        assert [h.name for h in s.handlebodies] == ["A"]
        assert s.surgery_count == 2
        assert s.num_pieces == 1

    def test_sew_fuses_with_opposite_sign(self):
        p = Presentation.assemble(
            handlebodies=[("A", 1)], surgery=[("K", 0)], links={("K", "A.1"): 2}
        )
        q = Presentation.assemble(
            handlebodies=[("B", 1)], surgery=[("J", 0)], links={("J", "B.1"): 3}
        )
        s = p.sew(q)
        fused = next(
            i for i in s.surgery_indices if "*" in s.circles[i].name
        )
        assert s.lk[fused][s.circle_index("K")] == 2
        assert s.lk[fused][s.circle_index("J")] == -3

    def test_mend_adds_one_handle_circle(self):
        p = pairing_presentation(1)
        m = p.mend()
        assert len(m.handlebodies) == 0
        # fused circle + original s1 + the one-handle circle
        assert m.surgery_count == 3
        assert m.caps == 0
        framings = sorted(c.framing for c in m.circles)
        assert framings == [0, 0, 0]

    def test_mend_framing_uses_quadratic_diagonal(self):
        p = Presentation.assemble(
            handlebodies=[("A", 1), ("B", 1)],
            links={("A.1", "A.1"): 2, ("B.1", "B.1"): 3, ("A.1", "B.1"): 1},
        )
        m = p.mend()
        fused = next(i for i in m.surgery_indices if "*" in m.circles[i].name)
        assert m.circles[fused].framing == 2 + 3 - 2 * 1

    def test_mend_across_pieces_merges_without_handle(self):
        p = Presentation.assemble(handlebodies=[("A", 0)], surgery=[("K", 1)])
        q = Presentation.assemble(handlebodies=[("B", 0)], surgery=[("J", 1)])
        u = p.disjoint_union(q)
        m = u.mend()
        assert m.surgery_count == 2  # no one-handle circle
        assert m.num_pieces == 1
        assert m.caps == 0

    def test_bare_sphere_gluing_leaves_cap(self):
        p = Presentation.assemble(handlebodies=[("A", 0)])
        q = Presentation.assemble(handlebodies=[("B", 0)])
        s = p.sew(q)
        assert s.handlebodies == ()
        assert s.circles == ()
        assert s.caps == 1
        assert s.num_pieces == 1


class TestPieces:
    def test_single_piece_by_default(self):
        p = two_circle()
        assert p.num_pieces == 1
        assert p.hb_piece == ()
        assert p.circle_piece == (0, 0)

    def test_slide_across_pieces_merges(self):
        u = two_circle().disjoint_union(two_circle())
        assert u.num_pieces == 2
        v = u.slide("K1", "K1'", +1)
        assert v.num_pieces == 1

    def test_lk_components_diagnostic(self):
        p = Presentation.assemble(
            handlebodies=[("H", 1)],
            surgery=[("K", 0), ("J", 1)],
            links={("K", "H.1"): 1},
        )
        assert lk_component_count(p) == 2


class TestMoveScript:
    def test_apply(self):
        p = two_circle((0, 0))
        script = MoveScript(
            (
                ("blowup", 1),
                ("slide", "K1", "K2", 1),
                ("blowdown", "B1"),
            )
        )
        q = script.apply(p)
        assert q.surgery_count == 2
        assert q.surgery_matrix()[0][0] == 0

    def test_unknown_move_rejected(self):
        with pytest.raises(InvalidMoveError):
            MoveScript((("twist", "K"),)).apply(two_circle())
