"""Words in free generators: reduction, commutators, evaluation, canonical forms.

A word is a tuple of (symbol, exponent) with exponent +1 or -1, always freely
reduced.  The compact string form writes a generator as its lowercase letter
and its inverse as the uppercase letter: "abaBAB" is a b a b^-1 a^-1 b^-1.
"""

from __future__ import annotations

from .errors import UnassignedSymbol


class Word:
    __slots__ = ("letters",)

    def __init__(self, letters=()):
        self.letters = free_reduce(letters)

    @staticmethod
    def parse(text):
        """Parse compact notation: lowercase = generator, uppercase = inverse."""
        letters = []
        for ch in text:
            if ch.isspace():
                continue
            if ch.islower():
                letters.append((ch, 1))
            elif ch.isupper():
                letters.append((ch.lower(), -1))
            else:
                raise ValueError(f"bad character {ch!r} in word")
        return Word(letters)

    @staticmethod
    def gen(symbol, exponent=1):
        if exponent >= 0:
            return Word(((symbol, 1),) * exponent)
        return Word(((symbol, -1),) * (-exponent))

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def inverse(self):
        return Word(tuple((s, -e) for s, e in reversed(self.letters)))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = Word()
        for _ in range(n):
            out = out * self
        return out

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def symbols(self):
        return {s for s, _ in self.letters}

    def __str__(self):
        return "".join(s if e == 1 else s.upper() for s, e in self.letters) or "1"

    def __repr__(self):
        return f"Word({str(self)!r})"


def free_reduce(letters):
    out = []
    for s, e in letters:
        if out and out[-1][0] == s and out[-1][1] == -e:
            out.pop()
        else:
            out.append((s, e))
    return tuple(out)


def commutator(x, y):
    """[x, y] = x^-1 y^-1 x y."""
    return x.inverse() * y.inverse() * x * y


def iterated_commutator(*words):
    """[x1, ..., xn] left-nested: [[x1, ..., x_{n-1}], xn]."""
    if not words:
        raise ValueError("iterated commutator needs at least one word")
    out = words[0]
    for w in words[1:]:
        out = commutator(out, w)
    return out


def comm(*symbols):
    """Iterated commutator of single generators given by symbol, e.g. comm('a','b','b')."""
    return iterated_commutator(*(Word.gen(s) for s in symbols))


def evaluate_word(word, assignment):
    """Product of generator images in word order, exponents applied."""
    missing = word.symbols() - set(assignment)
    if missing:
        raise UnassignedSymbol(f"unassigned symbols: {sorted(missing)}")
    result = None
    for s, e in word.letters:
        g = assignment[s]
        factor = g if e == 1 else g.inverse()
        result = factor if result is None else result * factor
    if result is None:
        some = next(iter(assignment.values()))
        from .algebra import GroupElement
        return GroupElement(some.context, some.context.identity())
    return result


def verify_presentation(relators, assignment):
    """Evaluate each relator; returns (overall pass, list of (word, holds))."""
    report = []
    for rel in relators:
        holds = evaluate_word(rel, assignment).is_identity()
        report.append((rel, holds))
    return all(h for _, h in report), report


def cyclic_reduce(letters):
    letters = list(free_reduce(letters))
    while len(letters) >= 2 and letters[0][0] == letters[-1][0] and letters[0][1] == -letters[-1][1]:
        letters = list(free_reduce(letters[1:-1]))
    return tuple(letters)


def canonical_relator(word):
    """Lexicographically least among all cyclic rotations of the cyclically
    reduced word and of its inverse; identifies relators up to free reduction,
    rotation, and inversion."""
    reduced = cyclic_reduce(word.letters)
    if not reduced:
        return Word()
    candidates = []
    for base in (reduced, cyclic_reduce(tuple((s, -e) for s, e in reversed(reduced)))):
        n = len(base)
        for i in range(n):
            candidates.append(base[i:] + base[:i])
    best = min(candidates, key=lambda ls: tuple((s, -e) for s, e in ls))
    return Word(best)


def relator_set_key(relators):
    """Order-insensitive canonical key for a relator list."""
    return tuple(sorted(str(canonical_relator(r)) for r in relators))
