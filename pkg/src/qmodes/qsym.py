"""q-symmetrized multiparticle states on tensor products of mode labels.

A word (i_1, ..., i_N) with letters in 1..n labels a basis vector of the
N-fold tensor space of mode labels.  Its q-symmetrization is

    |w>_q = q^{R(w)} sqrt(prod_k [n_k]! / [N]!) sum_u q^{R(u)} |u>

where u runs over the distinct arrangements of the multiset of letters,
R counts inversions, and n_k is the multiplicity of letter k.  Two facts
certified by the test suite follow: the squared norm is exactly q^{2 R(w)}
(so sorted words are normalized), and adjacent transposition obeys
|w>_q = q^{eps(w_k, w_{k+1})} |swap_k(w)>_q with eps the three-valued
comparator (+1 when the left letter is larger, -1 when smaller, 0 on
ties).

The deformed transposition operator P acts on tensor basis words by
swapping positions k, k+1 with weight q^{-eps}; it is an involution and
leaves every q-symmetrized state fixed, which is the operator form of the
exchange relation (at q -> 1 it degenerates to the plain bosonic swap
invariance).
"""

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np
import scipy.sparse as sp

from .qcore import DeformationParams, q_factorial

__all__ = [
    "MAX_PARTICLES",
    "MAX_MODES",
    "Word",
    "inversion_count",
    "sign_compare",
    "multiset_arrangements",
    "tensor_index",
    "q_symmetrize",
    "bosonic_symmetrize",
    "fundamental_norm",
    "ExchangeReport",
    "exchange_check",
    "transposition_op",
    "norm_identity_exact",
]

# Enumeration bounds: distinct arrangements grow multinomially, so the
# symmetrizer refuses word shapes beyond these limits instead of hanging.
MAX_PARTICLES = 10
MAX_MODES = 6


@dataclass(frozen=True)
class Word:
    """A tensor word: letters i_1..i_N, each in 1..n_modes."""

    letters: tuple[int, ...]
    n_modes: int

    def __post_init__(self) -> None:
        letters = tuple(int(l) for l in self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise ValueError("a word needs at least one letter")
        if self.n_modes < 1:
            raise ValueError(f"n_modes must be >= 1, got {self.n_modes}")
        if any(not 1 <= l <= self.n_modes for l in letters):
            raise ValueError(
                f"letters must lie in 1..{self.n_modes}, got {letters!r}"
            )

    @classmethod
    def from_string(cls, text: str, n_modes: int | None = None) -> "Word":
        """Parse a comma-separated letter list such as ``"1,2,2,3"``."""
        try:
            letters = tuple(int(piece) for piece in text.split(","))
        except ValueError as exc:
            raise ValueError(f"cannot parse word {text!r}: {exc}") from None
        return cls(letters, n_modes if n_modes is not None else max(letters, default=1))

    @property
    def size(self) -> int:
        return len(self.letters)

    @property
    def counts(self) -> tuple[int, ...]:
        """Multiplicity of each letter 1..n_modes."""
        table = [0] * self.n_modes
        for letter in self.letters:
            table[letter - 1] += 1
        return tuple(table)

    def swap_adjacent(self, k: int) -> "Word":
        """Word with positions k, k+1 (1-based) exchanged."""
        if not 1 <= k < self.size:
            raise ValueError(f"positions must satisfy 1 <= k < {self.size}, got {k}")
        letters = list(self.letters)
        letters[k - 1], letters[k] = letters[k], letters[k - 1]
        return Word(tuple(letters), self.n_modes)


def inversion_count(letters: Sequence[int]) -> int:
    """Number of pairs a < b with letters[a] > letters[b]."""
    count = 0
    for a in range(len(letters)):
        for b in range(a + 1, len(letters)):
            if letters[a] > letters[b]:
                count += 1
    return count


def sign_compare(i: int, j: int) -> int:
    """Three-valued comparator: +1 if i > j, -1 if i < j, 0 on ties."""
    if i > j:
        return 1
    if i < j:
        return -1
    return 0


def multiset_arrangements(counts: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Distinct arrangements of the multiset with the given letter counts.

    Yields words (tuples of 1-based letters) in lexicographic order; for a
    multiset with multiplicities n_k the number of results is the plain
    multinomial N! / prod n_k!, not N! -- repeated letters are never
    enumerated twice.
    """
    counts = [int(c) for c in counts]
    if any(c < 0 for c in counts):
        raise ValueError(f"counts must be nonnegative, got {counts!r}")
    total = sum(counts)
    if total == 0:
        return
    prefix: list[int] = []

    def emit() -> Iterator[tuple[int, ...]]:
        if len(prefix) == total:
            yield tuple(prefix)
            return
        for letter in range(1, len(counts) + 1):
            if counts[letter - 1] > 0:
                counts[letter - 1] -= 1
                prefix.append(letter)
                yield from emit()
                prefix.pop()
                counts[letter - 1] += 1

    yield from emit()


def tensor_index(letters: Sequence[int], n_modes: int) -> int:
    """Flat index of a tensor basis word (position 1 most significant)."""
    index = 0
    for letter in letters:
        if not 1 <= letter <= n_modes:
            raise ValueError(f"letter {letter} outside 1..{n_modes}")
        index = index * n_modes + (letter - 1)
    return index


def _check_bounds(word: Word) -> None:
    if word.size > MAX_PARTICLES:
        raise ValueError(
            f"word length {word.size} exceeds the enumeration bound {MAX_PARTICLES}"
        )
    if word.n_modes > MAX_MODES:
        raise ValueError(
            f"n_modes {word.n_modes} exceeds the enumeration bound {MAX_MODES}"
        )


def q_symmetrize(word: Word, params: DeformationParams) -> np.ndarray:
    """q-symmetrized state of a word as a dense vector of dimension n^N.

    The sum runs over the distinct arrangements of the letter multiset;
    each arrangement u carries the weight q^{R(word)} q^{R(u)} and the whole
    sum is scaled by sqrt(prod [n_k]! / [N]!).
    """
    _check_bounds(word)
    q = params.q
    prefactor = 1.0
    for c in word.counts:
        prefactor *= q_factorial(params, c)
    prefactor = math.sqrt(prefactor / q_factorial(params, word.size))
    base = q ** inversion_count(word.letters) * prefactor
    vector = np.zeros(word.n_modes**word.size, dtype=np.float64)
    for arrangement in multiset_arrangements(word.counts):
        vector[tensor_index(arrangement, word.n_modes)] = (
            base * q ** inversion_count(arrangement)
        )
    return vector


def bosonic_symmetrize(word: Word) -> np.ndarray:
    """Undeformed symmetric state: uniform over distinct arrangements, normalized."""
    _check_bounds(word)
    vector = np.zeros(word.n_modes**word.size, dtype=np.float64)
    for arrangement in multiset_arrangements(word.counts):
        vector[tensor_index(arrangement, word.n_modes)] = 1.0
    return vector / np.linalg.norm(vector)


def fundamental_norm(word: Word, params: DeformationParams) -> float:
    """Squared norm of the q-symmetrized state; equals q^{2 R(word)}."""
    vector = q_symmetrize(word, params)
    return float(vector @ vector)


@dataclass(frozen=True)
class ExchangeReport:
    """Residual of the adjacent-exchange relation at one position."""

    word: tuple[int, ...]
    position: int
    factor: float
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual < self.tol


def exchange_check(
    word: Word, k: int, params: DeformationParams, tol: float = 1e-13
) -> ExchangeReport:
    """Verify |w>_q = q^{eps(w_k, w_{k+1})} |swap_k(w)>_q at position k.

    Equal adjacent letters make the two sides identical by construction, so
    the residual is then exactly zero.
    """
    swapped = word.swap_adjacent(k)
    epsilon = sign_compare(word.letters[k - 1], word.letters[k])
    factor = params.q**epsilon
    residual = float(
        np.max(np.abs(q_symmetrize(word, params) - factor * q_symmetrize(swapped, params)))
    )
    return ExchangeReport(
        word=word.letters, position=k, factor=factor, residual=residual, tol=tol
    )


def transposition_op(
    size: int, n_modes: int, k: int, params: DeformationParams
) -> sp.csr_matrix:
    """Deformed transposition of tensor positions k, k+1 (1-based).

    Acts on each basis word by swapping the letters at positions k and k+1
    with weight q^{-eps(letter_k, letter_{k+1})}.  The operator is its own
    inverse, and every q-symmetrized state is an eigenvector with
    eigenvalue 1.
    """
    if size < 1 or n_modes < 1:
        raise ValueError("size and n_modes must be >= 1")
    if size > MAX_PARTICLES or n_modes > MAX_MODES:
        raise ValueError(
            f"requested space {n_modes}^{size} exceeds the enumeration bounds"
        )
    if not 1 <= k < size:
        raise ValueError(f"positions must satisfy 1 <= k < {size}, got {k}")
    dim = n_modes**size
    index = np.arange(dim)
    stride_right = n_modes ** (size - k - 1)  # position k+1
    stride_left = stride_right * n_modes  # position k
    left = index // stride_left % n_modes
    right = index // stride_right % n_modes
    target = index + (left - right) * stride_right + (right - left) * stride_left
    epsilon = np.sign(left - right)  # eps of the source word's letters
    weight = params.q ** (-epsilon.astype(np.float64))
    matrix = sp.csr_matrix((weight, (target, index)), shape=(dim, dim))
    matrix.eliminate_zeros()
    return matrix


def norm_identity_exact(counts: Sequence[int]):
    """Exact arrangement sum sum_u q^{2 R(u)} and the bracket multinomial.

    Returns the pair (arrangement_sum, multinomial) as exact polynomials;
    their equality is the closed form for the norms of q-symmetrized
    states.  Import is deferred so the tensor layer stays float-only unless
    the exact route is requested.
    """
    from .qpoly import QPolynomial, poly_q_multinomial

    counts = tuple(int(c) for c in counts)
    if not counts:
        raise ValueError("counts must be a nonempty sequence")
    if any(c < 0 for c in counts):
        raise ValueError(f"counts must be nonnegative, got {counts!r}")
    if sum(counts) > MAX_PARTICLES:
        raise ValueError(
            f"total count {sum(counts)} exceeds the enumeration bound {MAX_PARTICLES}"
        )
    if len(counts) > MAX_MODES:
        raise ValueError(f"{len(counts)} slots exceed the enumeration bound {MAX_MODES}")
    exponent_tally: dict[int, int] = {}
    for arrangement in multiset_arrangements(counts):
        e = 2 * inversion_count(arrangement)
        exponent_tally[e] = exponent_tally.get(e, 0) + 1
    if not exponent_tally:  # all counts zero: empty sum vs [0]-style convention
        exponent_tally = {0: 1}
    arrangement_sum = QPolynomial(exponent_tally)
    return arrangement_sum, poly_q_multinomial(counts)
