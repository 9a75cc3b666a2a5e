"""One-dimensional subshifts: languages, emptiness, greedy minimalization.

Emptiness of a finite-type shift is read off its de Bruijn graph: the shift
is nonempty exactly when the graph keeps a vertex after repeatedly deleting
vertices with no incoming or no outgoing edge. At desk scale this exact
check stands in for the halting oracle a general effective shift would need.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

DEFAULT_ALPHABET = ("0", "1")
RECURRENCE_CAP = 4096


class SubstitutionError(ValueError):
    pass


class NotMinimal(RuntimeError):
    """recurrence_bound ran past its cap; the language is likely not minimal."""


# -- de Bruijn graphs ---------------------------------------------------

def _avoids(word: str, forbidden) -> bool:
    return not any(f in word for f in forbidden)


def _allowed_words(alphabet, length: int, forbidden) -> list[str]:
    """Words of the given length with no forbidden factor, grown letter by letter."""
    words = [""]
    for _ in range(length):
        words = [w + a for w in words for a in alphabet if _avoids(w + a, forbidden)]
    return words


@dataclass
class DeBruijnGraph:
    order: int
    vertices: set
    edges: set  # words of length order + 1

    @classmethod
    def build(cls, forbidden, order: int, alphabet=DEFAULT_ALPHABET) -> "DeBruijnGraph":
        verts = set(_allowed_words(alphabet, order, forbidden))
        edges = {v + a for v in verts for a in alphabet
                 if (v + a)[1:] in verts and _avoids(v + a, forbidden)}
        return cls(order, verts, edges)

    def core(self) -> set:
        """Vertices lying on a bi-infinite path."""
        alive = set(self.vertices)
        edges = set(self.edges)
        while True:
            has_out = {e[:-1] for e in edges}
            has_in = {e[1:] for e in edges}
            keep = alive & has_out & has_in
            if keep == alive:
                return alive
            alive = keep
            edges = {e for e in edges if e[:-1] in alive and e[1:] in alive}

    def has_cycle(self) -> bool:
        return bool(self.core())


def is_empty(forbidden, L: int, alphabet=DEFAULT_ALPHABET) -> bool:
    """Is the shift avoiding ``forbidden`` empty? Exact for L at least the
    longest forbidden word."""
    longest = max((len(w) for w in forbidden), default=0)
    if L < longest:
        raise ValueError(f"order {L} below the longest forbidden word ({longest})")
    return not DeBruijnGraph.build(forbidden, max(L, 1), alphabet).has_cycle()


# -- languages ----------------------------------------------------------

@dataclass
class SubshiftLanguage1D:
    alphabet: tuple
    kind: str  # forbidden-words | substitution | stream
    forbidden: tuple = ()
    substitution: dict = field(default_factory=dict)
    # stream: eventually periodic prefix + period^inf, or a generator over a horizon
    prefix: str = ""
    period: str = ""
    generator: object = None
    horizon: int = 0

    def __post_init__(self):
        self.alphabet = tuple(self.alphabet)
        if self.kind not in ("forbidden-words", "substitution", "stream"):
            raise ValueError(f"unknown language kind {self.kind!r}")
        if self.kind == "substitution":
            check_primitive(self.substitution, self.alphabet)

    def query(self, w: str) -> bool:
        """Is w a factor of some point? Exact for the forbidden-words and
        substitution kinds and for eventually periodic streams."""
        if any(a not in self.alphabet for a in w):
            return False
        if not w:
            return True
        if self.kind == "forbidden-words":
            return _forbidden_query(self, w)
        return w in set(factors(self, len(w)))


def _forbidden_query(lang: SubshiftLanguage1D, w: str) -> bool:
    if not _avoids(w, lang.forbidden):
        return False
    order = max([len(f) for f in lang.forbidden] + [1])
    core = DeBruijnGraph.build(lang.forbidden, order, lang.alphabet).core()
    if len(w) < order:
        return any(w in v for v in core)
    return all(w[i:i + order] in core for i in range(len(w) - order + 1))


def forbidden_language(words, alphabet=DEFAULT_ALPHABET) -> SubshiftLanguage1D:
    return SubshiftLanguage1D(tuple(alphabet), "forbidden-words", forbidden=tuple(words))


def substitution_language(rules: dict, alphabet=None) -> SubshiftLanguage1D:
    return SubshiftLanguage1D(tuple(alphabet or rules), "substitution", substitution=dict(rules))


def periodic_language(prefix: str, period: str, alphabet=None) -> SubshiftLanguage1D:
    alphabet = alphabet or tuple(sorted(set(prefix + period)))
    return SubshiftLanguage1D(tuple(alphabet), "stream", prefix=prefix, period=period)


# -- substitutions ------------------------------------------------------

def apply(rules: dict, word: str) -> str:
    return "".join(rules[a] for a in word)


def check_primitive(rules: dict, alphabet) -> None:
    """Raise unless some power of the substitution maps every symbol onto a
    word holding all symbols (Wielandt's bound caps the power)."""
    alphabet = tuple(alphabet)
    if set(rules) != set(alphabet) or any(not rules[a] for a in alphabet):
        raise SubstitutionError("substitution must map every symbol to a nonempty word")
    if any(c not in alphabet for w in rules.values() for c in w):
        raise SubstitutionError("substitution uses symbols outside the alphabet")
    k = len(alphabet)
    reach = {a: set(rules[a]) for a in alphabet}
    for _ in range((k - 1) ** 2 + 1):
        if all(len(r) == k for r in reach.values()):
            return
        reach = {a: {c for b in reach[a] for c in rules[b]} for a in alphabet}
    if not all(len(r) == k for r in reach.values()):
        raise SubstitutionError("substitution is not primitive")


def _legal_pairs(rules: dict) -> set:
    """Two-letter words of the substitution language, as a closure."""
    pairs = {w[i:i + 2] for w in rules.values() for i in range(len(w) - 1)}
    todo = list(pairs)
    while todo:
        img = apply(rules, todo.pop())
        for i in range(len(img) - 1):
            p = img[i:i + 2]
            if p not in pairs:
                pairs.add(p)
                todo.append(p)
    return pairs


def _substitution_factors(rules: dict, alphabet, n: int) -> set:
    """n-factors of sigma^k(ab) over legal pairs ab, with k large enough that
    every sigma^k(letter) has length >= n - 1: then any n-factor of a point
    straddles at most two such images."""
    if n == 1:
        return set(alphabet)
    words, blocks = sorted(_legal_pairs(rules)), {a: a for a in alphabet}
    while min(len(b) for b in blocks.values()) < n - 1:
        words = [apply(rules, w) for w in words]
        blocks = {a: apply(rules, b) for a, b in blocks.items()}
    return {w[i:i + n] for w in words for i in range(len(w) - n + 1)}


def factors(lang: SubshiftLanguage1D, n: int) -> list[str]:
    """The length-n factors, sorted by the alphabet order."""
    if n <= 0:
        raise ValueError("factor length must be positive")
    rank = {a: i for i, a in enumerate(lang.alphabet)}
    if lang.kind == "substitution":
        found = _substitution_factors(lang.substitution, lang.alphabet, n)
    elif lang.kind == "forbidden-words":
        found = {w for w in _allowed_words(lang.alphabet, n, lang.forbidden) if _forbidden_query(lang, w)}
    else:
        found = _stream_factors(lang, n)
    return sorted(found, key=lambda w: [rank[c] for c in w])


def _stream_factors(lang: SubshiftLanguage1D, n: int) -> set:
    if lang.generator is not None:
        text = "".join(lang.generator(i) for i in range(lang.horizon))
    else:
        reps = n // max(1, len(lang.period)) + 2
        text = lang.prefix + lang.period * reps
    return {text[i:i + n] for i in range(len(text) - n + 1)}


def recurrence_bound(lang: SubshiftLanguage1D, w: str, cap: int = RECURRENCE_CAP) -> int:
    """Least N such that w occurs in every length-N factor."""
    if not lang.query(w):
        raise ValueError(f"{w!r} is not in the language")
    for n in range(len(w), cap + 1):
        if all(w in u for u in factors(lang, n)):
            return n
    raise NotMinimal(f"{w!r} still missing from some factor of length {cap}")


# -- greedy minimalization ----------------------------------------------

def length_lex(alphabet, max_len: int):
    for n in range(1, max_len + 1):
        for t in product(alphabet, repeat=n):
            yield "".join(t)


def minimalize(forbidden, maxLen: int, alphabet=DEFAULT_ALPHABET) -> list[str]:
    """Greedily forbid every word (length-lex order) whose addition keeps the
    shift nonempty; returns the forbidden list cut at maxLen, in the order
    the words were taken (input words first)."""
    F = list(dict.fromkeys(forbidden))
    order = max([maxLen] + [len(w) for w in F])
    if is_empty(F, order, alphabet):
        raise ValueError("the starting shift is already empty")
    taken = set(F)
    for w in length_lex(alphabet, maxLen):
        if w in taken:
            continue
        if not is_empty(F + [w], order, alphabet):
            F.append(w)
            taken.add(w)
    return [w for w in F if len(w) <= maxLen]


# -- text formats ---------------------------------------------------------

def parse_words(text: str) -> tuple[tuple, list[str]]:
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0] != "words v1":
        raise ValueError("expected header 'words v1'")
    if len(lines) < 2 or not lines[1].startswith("alphabet"):
        raise ValueError("expected an alphabet line")
    alphabet = tuple(lines[1].split()[1:])
    words = lines[2:]
    for w in words:
        if any(c not in alphabet for c in w):
            raise ValueError(f"word {w!r} leaves the alphabet")
    return alphabet, words


def format_words(alphabet, words) -> str:
    return "\n".join(["words v1", "alphabet " + " ".join(alphabet), *words]) + "\n"


def parse_substitution(text: str) -> dict:
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0] != "subst v1":
        raise ValueError("expected header 'subst v1'")
    rules = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3 or parts[1] != "->":
            raise ValueError(f"bad rule: {ln}")
        rules[parts[0]] = parts[2]
    return rules


def format_substitution(rules: dict) -> str:
    return "\n".join(["subst v1", *(f"{a} -> {w}" for a, w in rules.items())]) + "\n"


THUE_MORSE = {"0": "01", "1": "10"}
FIBONACCI = {"0": "01", "1": "0"}
