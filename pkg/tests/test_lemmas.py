import pytest

from sncover.certificates import verify_certificate
from sncover.diagram import EMPTY, Partition, dist_rows, hook, rect, row, staircase
from sncover.errors import PreconditionError
from sncover.kronecker import height_bound_check
from sncover.lemmas import (
    BUILDERS,
    lemma_hookidempotent,
    lemma_hooksquare,
    lemma_krectsinside,
    lemma_nearsharedrows,
    lemma_neartensor,
    lemma_pieri,
    lemma_pieri_chain,
    lemma_rect_squaring,
    lemma_rectcube,
    lemma_rectsquare,
    lemma_squarecube,
    pieri_chain_target,
    semigroup_example,
)

P = Partition.parse


def full(cert):
    report = verify_certificate(cert, "full" if cert.size <= 14 else "leaves")
    assert report.passed
    return report


class TestRectangles:
    @pytest.mark.parametrize("a, b, c", [(1, 1, 0), (2, 1, 0), (2, 2, 1), (1, 3, 2), (3, 1, 1)])
    def test_rectcube(self, a, b, c):
        cert = lemma_rectcube(a, b, c)
        assert cert.entries == (rect(a * b + c, a), rect(a * b + c, a), Partition((a * b + a * c,) + (a * b,) * (a - 1)))
        full(cert)

    def test_rectcube_with_remainder(self):
        assert lemma_rectcube(2, 2, 1).entries == (P("[5,5]"), P("[5,5]"), P("[6,4]"))

    def test_rectsquare_two_by_three(self):
        cert = lemma_rectsquare(2, 3, 1)
        assert cert.entries == (rect(6, 2), rect(6, 2), rect(3, 4))
        full(cert)
        # ht(Rect(3,4)) == ht(Rect(6,2))^2
        assert cert.entries[2].height == cert.entries[0].height ** 2
        assert height_bound_check(rect(6, 2), rect(6, 2))

    @pytest.mark.parametrize("x, y, z", [(1, 1, 1), (1, 2, 2), (2, 1, 1), (1, 3, 1)])
    def test_rectsquare_general(self, x, y, z):
        cert = lemma_rectsquare(x, y, z)
        assert cert.entries == (rect(x * y * z, x * z), rect(x * y * z, x * z), rect(y * z * z, x * x))
        full(cert)

    def test_rect_squaring_chain(self):
        steps = lemma_rect_squaring(16, 2)
        assert [s.entries[2] for s in steps] == [rect(8, 4)]
        assert verify_certificate(steps[0]).passed

    def test_rect_squaring_rejects_tall(self):
        with pytest.raises(PreconditionError):
            lemma_rect_squaring(2, 4)

    @pytest.mark.parametrize("k, witness", [(1, (4,)), (2, (8, 6, 2)), (3, (12, 10, 8, 4, 2))])
    def test_squarecube(self, k, witness):
        cert, w = lemma_squarecube(k)
        assert w == Partition(witness)
        assert dist_rows(w) == 2 * k - 1
        assert cert.entries[:3] == (rect(2 * k, 2 * k),) * 3
        full(cert)


class TestHooks:
    @pytest.mark.parametrize("a, b", [(1, 1), (3, 2), (2, 3), (4, 4), (5, 2)])
    def test_hookidempotent(self, a, b):
        cert = lemma_hookidempotent(a, b)
        assert cert.entries == (hook(a, b), hook(a, b), hook(max(a, b), min(a, b)))
        full(cert)

    @pytest.mark.parametrize(
        "x, y, m, third",
        [(3, 2, 2, (4,)), (4, 4, 3, (5, 2)), (3, 3, 1, (5,)), (4, 3, 2, (6,))],
    )
    def test_hooksquare(self, x, y, m, third):
        cert = lemma_hooksquare(x, y, m)
        assert cert.entries == (hook(x, y), hook(x, y), Partition(third))
        full(cert)

    def test_hooksquare_precondition(self):
        with pytest.raises(PreconditionError):
            lemma_hooksquare(2, 5, 3)


class TestPieri:
    def test_two_row_on_staircase(self):
        cert = lemma_pieri(staircase(3), 4, "two_row")
        assert cert.entries == (P("[6,4]"), P("[7,2,1]"), P("[4,3,2,1]"))
        full(cert)

    def test_hook_variant(self):
        cert = lemma_pieri(staircase(3), 4, "hook")
        assert cert.entries == (hook(7, 4), P("[7,2,1]"), P("[4,3,2,1]"))
        full(cert)

    def test_two_row_needs_room(self):
        with pytest.raises(PreconditionError):
            lemma_pieri(P("[2]"), 3, "two_row")

    def test_two_row_chain(self):
        cert = lemma_pieri_chain(8, 2, 2, "two_row")
        assert cert.entries == (P("[6,2]"), P("[6,2]"), row(8), P("[4,2,2]"))
        assert pieri_chain_target(8, 2, 2, "two_row") == P("[4,2,2]")
        full(cert)

    def test_hook_chain(self):
        cert = lemma_pieri_chain(7, 3, 2, "hook")
        assert cert.entries == (hook(5, 3), hook(5, 3), row(7), P("[3,2,2]"))
        full(cert)

    def test_chain_preconditions(self):
        with pytest.raises(PreconditionError):
            lemma_pieri_chain(5, 2, 2, "two_row")
        with pytest.raises(PreconditionError):
            lemma_pieri_chain(3, 3, 1, "hook")


class TestNearRelations:
    def test_neartensor(self):
        cert, theta = lemma_neartensor(P("[3,2]"), P("[4,1]"))
        assert theta == P("[1,1]")
        assert cert.entries == (P("[3,2]"), P("[4,1]"), P("[4,1]"))
        full(cert)

    def test_neartensor_identical(self):
        cert, theta = lemma_neartensor(P("[3,1]"), P("[3,1]"))
        assert theta == EMPTY
        assert cert.entries[2] == row(4)

    def test_neartensor_too_far(self):
        with pytest.raises(PreconditionError):
            lemma_neartensor(P("[3]"), P("[1,1,1]"))

    def test_nearsharedrows(self):
        cert, theta = lemma_nearsharedrows(P("[4,2,1]"), P("[4,3]"), 1, P("[1]"))
        assert cert.entries == (P("[4,2,1]"), P("[4,3]"), P("[6,1]"))
        assert theta == P("[1,1]")
        full(cert)

    def test_nearsharedrows_rejects_bad_choice(self):
        with pytest.raises(PreconditionError):
            lemma_nearsharedrows(P("[4,2,1]"), P("[4,3]"), 2, P("[3]"))


class TestAssembly:
    def test_krectsinside(self):
        cert = lemma_krectsinside(P("[5,4,3,2]"), 2)
        assert cert.entries == (P("[5,4,3,2]"), P("[5,4,3,2]"), P("[8,6]"))
        full(cert)

    def test_semigroup_example(self):
        cert = semigroup_example()
        assert cert.entries == (P("[7,2,1]"), P("[7,1,1,1]"), P("[4,3,2,1]"))
        full(cert)

    def test_builders_cover_every_lemma(self):
        assert set(BUILDERS) == {
            "rectcube", "rectsquare", "squarecube", "hookidempotent", "hooksquare", "pieri",
            "pieri-chain", "neartensor", "nearsharedrows", "krectsinside", "semigroup-example",
        }
        assert BUILDERS["squarecube"](1).entries[3] == row(4)
