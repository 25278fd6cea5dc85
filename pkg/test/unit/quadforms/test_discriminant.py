from __future__ import absolute_import, annotations

from unittest import TestCase

from arithfun.factor import factorize
from common.errors import DomainError
from quadforms.discriminant import Discriminant


def _square_free(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n).factors)


class TestDecompose(TestCase):

    def test_examples(self):
        self.assertEqual(Discriminant(-4, -4, 1, 2), Discriminant.decompose(-4))
        self.assertEqual(Discriminant(-3, -3, 1, 1), Discriminant.decompose(-3))
        self.assertEqual(Discriminant(-12, -3, 2, 2), Discriminant.decompose(-12))
        self.assertEqual(Discriminant(-72, -8, 3, 6), Discriminant.decompose(-72))

    def test_invariants(self):
        for delta in range(-3, -5000, -1):
            if delta % 4 not in (0, 1):
                continue
            decomposition = Discriminant.decompose(delta)
            self.assertEqual(delta, decomposition.D * decomposition.f ** 2)
            D = decomposition.D
            if D % 4 == 1:
                self.assertTrue(_square_free(-D))
                self.assertEqual(decomposition.f, decomposition.f_tilde)
            else:
                self.assertIn((D // 4) % 4, (2, 3))
                self.assertTrue(_square_free(-D // 4))
                self.assertEqual(2 * decomposition.f, decomposition.f_tilde)
            self.assertEqual(0, delta % decomposition.f_tilde ** 2)
            self.assertTrue(_square_free(-delta // decomposition.f_tilde ** 2))

    def test_rejects_invalid(self):
        for delta in [-1, -2, -5, -6, 0, 4]:
            with self.assertRaises(DomainError):
                Discriminant.decompose(delta)

    def test_repr(self):
        decomposition = Discriminant.decompose(-300)
        self.assertEqual(decomposition, Discriminant.from_repr(decomposition.to_repr()))
