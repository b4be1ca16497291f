"""Free-group words over indexed generators.

A word is a tuple of nonzero ints: +k is generator k-1, -k its inverse
(generators are 0-indexed externally, letters 1-indexed internally so
negation works).  All public helpers return freely reduced tuples.
"""

from __future__ import annotations


def free_reduce(letters) -> tuple:
    out = []
    for x in letters:
        if x == 0:
            raise ValueError("zero letter in word")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def concat(*words) -> tuple:
    out = []
    for w in words:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def invert(word) -> tuple:
    return tuple(-x for x in reversed(word))


def power(word, n: int) -> tuple:
    if n == 0:
        return ()
    base = word if n > 0 else invert(word)
    out = ()
    for _ in range(abs(n)):
        out = concat(out, base)
    return out


def commutator(x, y) -> tuple:
    return concat(x, y, invert(x), invert(y))


def cyclic_reduce(word) -> tuple:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def rotate(word, k: int) -> tuple:
    if not word:
        return ()
    k %= len(word)
    return word[k:] + word[:k]


def rotations(word):
    """All cyclic rotations of a (cyclically reduced) word."""
    return [rotate(word, k) for k in range(max(1, len(word)))]


def is_cyclic_rotation(a, b) -> bool:
    return len(a) == len(b) and (not a or a in {rotate(b, k) for k in range(len(b))})


def normal_form(word) -> tuple:
    """Canonical representative among a reduced word and its inverse."""
    w = free_reduce(word)
    wi = invert(w)
    return min(w, wi)


def syllables(word):
    """Run-length view [(letter index >0, signed exponent), ...]."""
    out = []
    for x in word:
        g = abs(x)
        e = 1 if x > 0 else -1
        if out and out[-1][0] == g:
            out[-1] = (g, out[-1][1] + e)
        else:
            out.append((g, e))
    return [(g, e) for g, e in out if e != 0]


def generators_used(word) -> set:
    return {abs(x) for x in word}


def substitute(word, gen: int, replacement) -> tuple:
    """Replace every occurrence of generator ``gen`` (1-indexed letter) by
    ``replacement`` (and inverses by the inverse), then reduce."""
    rep_inv = invert(replacement)
    out = []
    for x in word:
        if x == gen:
            chunk = replacement
        elif x == -gen:
            chunk = rep_inv
        else:
            chunk = (x,)
        for y in chunk:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return tuple(out)


# -- text syntax -------------------------------------------------------------
#
# Generator letters with optional signed integer exponents, concatenated:
# "ab-1a-2b-1ab2" means a b^-1 a^-2 b^-1 a b^2.

def parse_word(text: str, gen_names) -> tuple:
    index = {name: i + 1 for i, name in enumerate(gen_names)}
    out = []
    i = 0
    text = text.strip()
    if text in ("1", ""):
        return ()
    while i < len(text):
        ch = text[i]
        if ch not in index:
            raise ValueError(f"unknown generator {ch!r} in word {text!r}")
        i += 1
        j = i
        if j < len(text) and text[j] == "-":
            j += 1
        while j < len(text) and text[j].isdigit():
            j += 1
        exp = int(text[i:j]) if j > i and text[i:j] != "-" else 1
        if j > i and text[i:j] == "-":
            raise ValueError(f"dangling sign in word {text!r}")
        i = j
        if exp == 0:
            continue
        letter = index[ch] if exp > 0 else -index[ch]
        out.extend([letter] * abs(exp))
    return free_reduce(out)


def format_word(word, gen_names) -> str:
    if not word:
        return "1"
    parts = []
    for g, e in syllables(word):
        name = gen_names[g - 1]
        parts.append(name if e == 1 else f"{name}{e}")
    return "".join(parts)
