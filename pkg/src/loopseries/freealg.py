"""Free graded associative algebra on labeled generator copies.

``NCPolynomial`` models exact-integer linear combinations of words in the
graded generators ``x_n`` (copy 1), ``y_n`` (copy 2), ``z_n`` (copy 3).
One copy gives the algebra ``H`` of non-commutative polynomials; two and
three copies give the free products ``H u H`` and ``H u H u H`` in which
all co-operations of the coloop bialgebras take their values.

A letter is a pair ``(copy, index)`` and a word a tuple of letters; the
degree of a word is the sum of its indices, the product is concatenation.
Maps out of these algebras are always algebra homomorphisms, so they are
represented by their generator tables (``MultiMorphism``) or, for copy
relabelings, by a plain label map (``fold``).

``TensorPoly`` is the image of the canonical projection ``pi`` onto the
componentwise tensor product: keys are tuples of copy-free words.
"""

from __future__ import annotations

import json
from typing import Callable, Mapping

from .errors import StructuralError

Letter = tuple[int, int]
Word = tuple[Letter, ...]

COPY_NAMES = {1: "x", 2: "y", 3: "z"}
COPY_OF_NAME = {v: k for k, v in COPY_NAMES.items()}


def letter(copy: int, index: int) -> Letter:
    if copy not in COPY_NAMES:
        raise StructuralError(f"copy must be in {sorted(COPY_NAMES)}, got {copy}")
    if index < 1:
        raise StructuralError(f"generator index must be >= 1, got {index}")
    return (copy, index)


def word_degree(w: Word) -> int:
    return sum(idx for _, idx in w)


def _term_key(w: Word) -> tuple:
    return (word_degree(w), len(w), w)


class NCPolynomial:
    """Integer linear combination of words; immutable by convention."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Word, int] | None = None):
        self.terms: dict[Word, int] = {
            w: c for w, c in (terms or {}).items() if c != 0
        }
        self._hash: int | None = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "NCPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "NCPolynomial":
        return cls({(): 1})

    @classmethod
    def scalar(cls, c: int) -> "NCPolynomial":
        return cls({(): c})

    @classmethod
    def generator(cls, copy: int, index: int) -> "NCPolynomial":
        return cls({(letter(copy, index),): 1})

    # -- ring structure --------------------------------------------------

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return NCPolynomial(out)

    def __sub__(self, other: "NCPolynomial") -> "NCPolynomial":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) - c
        return NCPolynomial(out)

    def __neg__(self) -> "NCPolynomial":
        return NCPolynomial({w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return NCPolynomial({w: c * other for w, c in self.terms.items()})
        out: dict[Word, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return NCPolynomial(out)

    def __rmul__(self, other: int) -> "NCPolynomial":
        return self * other

    def __eq__(self, other) -> bool:
        return isinstance(other, NCPolynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def copies(self) -> set[int]:
        return {cp for w in self.terms for cp, _ in w}

    def degree(self) -> int:
        """Top degree; 0 for scalars and the zero polynomial."""
        return max((word_degree(w) for w in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        degrees = {word_degree(w) for w in self.terms}
        return len(degrees) <= 1

    def sorted_terms(self) -> list[tuple[Word, int]]:
        """Terms sorted by (degree, length, letters): the canonical order."""
        return sorted(self.terms.items(), key=lambda item: _term_key(item[0]))

    def coefficient(self, w: Word) -> int:
        return self.terms.get(tuple(w), 0)

    # -- text / JSON -------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for w, c in self.sorted_terms():
            body = "*".join(f"{COPY_NAMES[cp]}{idx}" for cp, idx in w)
            if not w:
                mag = str(abs(c))
            elif abs(c) == 1:
                mag = body
            else:
                mag = f"{abs(c)}*{body}"
            if not chunks:
                chunks.append(mag if c > 0 else f"-{mag}")
            else:
                chunks.append(f"+ {mag}" if c > 0 else f"- {mag}")
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"NCPolynomial({self})"

    def to_json(self) -> dict:
        return {
            "terms": [
                {"coeff": str(c), "word": [[cp, idx] for cp, idx in w]}
                for w, c in self.sorted_terms()
            ]
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "NCPolynomial":
        if isinstance(data, str):
            data = json.loads(data)
        terms: dict[Word, int] = {}
        for t in data["terms"]:
            w = tuple(letter(cp, idx) for cp, idx in t["word"])
            terms[w] = terms.get(w, 0) + int(t["coeff"])
        return cls(terms)


def nc_mul(p: NCPolynomial, q: NCPolynomial) -> NCPolynomial:
    """Concatenation product (free multiplication)."""
    return p * q


class MultiMorphism:
    """Algebra homomorphism out of a labeled free algebra, given by its
    images on generators: a map ``(copy, index) -> NCPolynomial``.

    Images may be supplied lazily through ``image_fn`` so that co-operation
    tables extend on demand; computed images are cached and the extension
    is idempotent (the same generator always maps to the same polynomial).
    """

    def __init__(self,
                 images: Mapping[Letter, NCPolynomial] | None = None,
                 image_fn: Callable[[int, int], NCPolynomial] | None = None):
        self.images: dict[Letter, NCPolynomial] = dict(images or {})
        self.image_fn = image_fn

    def image(self, copy: int, index: int) -> NCPolynomial:
        key = (copy, index)
        got = self.images.get(key)
        if got is None:
            if self.image_fn is None:
                raise StructuralError(f"no image for generator {key}")
            got = self.image_fn(copy, index)
            self.images[key] = got
        return got

    def __call__(self, p: NCPolynomial) -> NCPolynomial:
        out = NCPolynomial.zero()
        for w, c in p.terms.items():
            prod = NCPolynomial.scalar(c)
            for cp, idx in w:
                prod = prod * self.image(cp, idx)
                if prod.is_zero():
                    break
            out = out + prod
        return out


def fold(labelmap: Mapping[int, int], p: NCPolynomial) -> NCPolynomial:
    """Relabel copies, preserving letter order: an algebra homomorphism.

    The codiagonal ``mu`` is ``fold({1: 1, 2: 1})``; ``(id u mu)`` on three
    copies is ``fold({1: 1, 2: 2, 3: 2})``; embeddings and the canonical
    isomorphisms of the free product are the injective label maps.
    """
    out: dict[Word, int] = {}
    for w, c in p.terms.items():
        try:
            nw = tuple((labelmap[cp], idx) for cp, idx in w)
        except KeyError as exc:
            raise StructuralError(f"label map {labelmap} undefined on copy {exc}")
        out[nw] = out.get(nw, 0) + c
    return NCPolynomial(out)


# ---------------------------------------------------------------------------
# Canonical projection onto the tensor product and its linear section.
# ---------------------------------------------------------------------------

PlainWord = tuple[int, ...]


class TensorPoly:
    """Element of the componentwise tensor product ``H x ... x H``:
    integer combination of ``arity``-tuples of copy-free words."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int,
                 terms: Mapping[tuple[PlainWord, ...], int] | None = None):
        self.arity = arity
        self.terms: dict[tuple[PlainWord, ...], int] = {}
        for key, c in (terms or {}).items():
            if len(key) != arity:
                raise StructuralError(f"tensor key {key} has arity != {arity}")
            if c != 0:
                self.terms[key] = c

    @classmethod
    def one(cls, arity: int) -> "TensorPoly":
        return cls(arity, {((),) * arity: 1})

    def __add__(self, other: "TensorPoly") -> "TensorPoly":
        if self.arity != other.arity:
            raise StructuralError("tensor arity mismatch")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return TensorPoly(self.arity, out)

    def __sub__(self, other: "TensorPoly") -> "TensorPoly":
        return self + (other * -1)

    def __mul__(self, other):
        if isinstance(other, int):
            return TensorPoly(self.arity,
                              {k: c * other for k, c in self.terms.items()})
        if self.arity != other.arity:
            raise StructuralError("tensor arity mismatch")
        out: dict[tuple[PlainWord, ...], int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + c1 * c2
        return TensorPoly(self.arity, out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, TensorPoly) and self.arity == other.arity
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.arity, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[tuple[PlainWord, ...], int]]:
        def key(k):
            return tuple((sum(w), len(w), w) for w in k)
        return sorted(self.terms.items(), key=lambda item: key(item[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for k, c in self.sorted_terms():
            slots = []
            for w in k:
                slots.append("*".join(f"x{idx}" for idx in w) if w else "1")
            body = " (x) ".join(slots)
            mag = body if abs(c) == 1 else f"{abs(c)}*{body}"
            if not chunks:
                chunks.append(mag if c > 0 else f"-{mag}")
            else:
                chunks.append(f"+ {mag}" if c > 0 else f"- {mag}")
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"TensorPoly({self.arity}, {self})"


def project_pi(p: NCPolynomial, arity: int) -> TensorPoly:
    """Canonical projection: stably extract the subword of each copy and
    multiply within the copy, e.g. ``a1 b2 c1 d2 -> (ac) (x) (bd)``."""
    out: dict[tuple[PlainWord, ...], int] = {}
    for w, c in p.terms.items():
        slots: list[list[int]] = [[] for _ in range(arity)]
        for cp, idx in w:
            if not 1 <= cp <= arity:
                raise StructuralError(f"copy {cp} outside arity {arity}")
            slots[cp - 1].append(idx)
        key = tuple(tuple(s) for s in slots)
        out[key] = out.get(key, 0) + c
    return TensorPoly(arity, out)


def include_iota(t: TensorPoly) -> NCPolynomial:
    """Linear section of ``project_pi`` induced by the multiplication:
    ``a (x) b -> a^(1) b^(2)``."""
    out: dict[Word, int] = {}
    for key, c in t.terms.items():
        w: list[Letter] = []
        for cp0, plain in enumerate(key, start=1):
            w.extend((cp0, idx) for idx in plain)
        out[tuple(w)] = out.get(tuple(w), 0) + c
    return NCPolynomial(out)


def evaluate(p: NCPolynomial, assignment, one):
    """Evaluate under an algebra map sending each generator to an element
    of an associative algebra.

    ``assignment`` maps ``(copy, index)`` to algebra elements (a mapping or
    a callable); words go to ordered products, the empty word to ``one``.
    """
    get = assignment if callable(assignment) else None
    total = None
    for w, c in p.sorted_terms():
        value = one
        for cp, idx in w:
            if get is not None:
                elem = get(cp, idx)
            else:
                try:
                    elem = assignment[(cp, idx)]
                except KeyError:
                    raise StructuralError(
                        f"assignment missing generator {(cp, idx)}")
            value = value * elem
        value = value * c
        total = value if total is None else total + value
    if total is None:
        return one * 0
    return total


def parse_polynomial(text: str) -> NCPolynomial:
    """Parse the text form, e.g. ``x2 - y2 - 2*x1*y1 + 2*y1*y1``."""
    stripped = text.replace(" ", "")
    if not stripped or stripped == "0":
        return NCPolynomial.zero()
    # split into signed chunks
    chunks: list[str] = []
    cur = ""
    for ch in stripped:
        if ch in "+-" and cur and cur[-1] not in "+-":
            chunks.append(cur)
            cur = ch
        else:
            cur += ch
    chunks.append(cur)
    total = NCPolynomial.zero()
    for chunk in chunks:
        sign = 1
        while chunk and chunk[0] in "+-":
            if chunk[0] == "-":
                sign = -sign
            chunk = chunk[1:]
        coeff = sign
        w: list[Letter] = []
        for factor in chunk.split("*"):
            if not factor:
                raise StructuralError(f"empty factor in {text!r}")
            if factor[0].isdigit():
                coeff *= int(factor)
            else:
                name, idx = factor[0], factor[1:]
                if name not in COPY_OF_NAME or not idx.isdigit():
                    raise StructuralError(f"bad letter {factor!r} in {text!r}")
                w.append(letter(COPY_OF_NAME[name], int(idx)))
        total = total + NCPolynomial({tuple(w): coeff})
    return total


def generator_assignment(*coefficient_lists) -> dict[Letter, object]:
    """Assignment mapping copy ``k`` generators to the ``k``-th coefficient
    list: ``x_n -> lists[0][n-1]``, ``y_n -> lists[1][n-1]``, ...
    """
    out = {}
    for cp, coeffs in enumerate(coefficient_lists, start=1):
        for i, a in enumerate(coeffs, start=1):
            out[(cp, i)] = a
    return out
