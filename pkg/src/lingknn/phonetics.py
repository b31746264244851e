"""Soundex codes, their unit-cube embedding, and NYSIIS for comparison."""

from __future__ import annotations

import math
import re
import unicodedata
from typing import NamedTuple

__all__ = [
    "EncodingError",
    "SoundexVector",
    "fold",
    "soundex_encode",
    "soundex_vector",
    "soundex_similarity",
    "nysiis_encode",
]

_CODES = {}
for _letters, _digit in (("BFPV", "1"), ("CGJKQSXZ", "2"), ("DT", "3"), ("L", "4"), ("MN", "5"), ("R", "6")):
    for _ch in _letters:
        _CODES[_ch] = _digit

_CODE_RE = re.compile(r"^[A-Z][0-6]{3}$")


class EncodingError(ValueError):
    pass


class SoundexVector(NamedTuple):
    letter: float
    d1: float
    d2: float
    d3: float


def fold(surface: str) -> str:
    """Upper-case A-Z only: diacritics are stripped, anything else dropped."""
    decomposed = unicodedata.normalize("NFKD", surface)
    base = "".join(ch for ch in decomposed if not unicodedata.combining(ch))
    return "".join(ch for ch in base.upper() if "A" <= ch <= "Z")


def soundex_encode(surface: str) -> str:
    letters = fold(surface)
    if not letters:
        raise EncodingError(f"no encodable letter in {surface!r}")
    first = letters[0]
    digits: list[str] = []
    prev = _CODES.get(first, "")
    for ch in letters[1:]:
        if ch in "HW":
            # transparent: the code before H/W still counts as adjacent
            continue
        code = _CODES.get(ch)
        if code is None:
            prev = ""
            continue
        if code != prev:
            digits.append(code)
            if len(digits) == 3:
                break
        prev = code
    return first + "".join(digits).ljust(3, "0")


def _check(code: str) -> None:
    if not _CODE_RE.match(code):
        raise EncodingError(f"invalid soundex code {code!r}")


def soundex_vector(code: str) -> SoundexVector:
    _check(code)
    return SoundexVector(
        (ord(code[0]) - ord("A")) / 25,
        int(code[1]) / 6,
        int(code[2]) / 6,
        int(code[3]) / 6,
    )


def soundex_similarity(a: str, b: str) -> float:
    """1 minus the Euclidean distance of the embeddings over the cube diameter (2)."""
    if a == b:
        _check(a)
        return 1.0
    u, v = soundex_vector(a), soundex_vector(b)
    return 1.0 - math.dist(u, v) / 2.0


_VOWELS = set("AEIOU")


def nysiis_encode(surface: str, max_length: int | None = None) -> str:
    """New York State Identification and Intelligence System code."""
    name = fold(surface)
    if not name:
        raise EncodingError(f"no encodable letter in {surface!r}")

    for src, dst in (("MAC", "MCC"), ("KN", "NN"), ("K", "C"), ("PH", "FF"), ("PF", "FF"), ("SCH", "SSS")):
        if name.startswith(src):
            name = dst + name[len(src):]
            break
    for src, dst in (("EE", "Y"), ("IE", "Y"), ("DT", "D"), ("RT", "D"), ("RD", "D"), ("NT", "D"), ("ND", "D")):
        if name.endswith(src):
            name = name[: -len(src)] + dst
            break

    key = [name[0]]
    chars = list(name)
    i = 1
    while i < len(chars):
        ch = chars[i]
        if ch == "E" and i + 1 < len(chars) and chars[i + 1] == "V":
            chars[i : i + 2] = ["A", "F"]
        elif ch in _VOWELS:
            chars[i] = "A"
        elif ch == "Q":
            chars[i] = "G"
        elif ch == "Z":
            chars[i] = "S"
        elif ch == "M":
            chars[i] = "N"
        elif ch == "K":
            if i + 1 < len(chars) and chars[i + 1] == "N":
                chars[i] = "N"
            else:
                chars[i] = "C"
        elif ch == "S" and chars[i + 1 : i + 3] == ["C", "H"]:
            chars[i : i + 3] = ["S", "S", "S"]
        elif ch == "P" and i + 1 < len(chars) and chars[i + 1] == "H":
            chars[i : i + 2] = ["F", "F"]
        elif ch == "H":
            prev_v = chars[i - 1] in _VOWELS
            next_v = i + 1 < len(chars) and chars[i + 1] in _VOWELS
            if not prev_v or not next_v:
                chars[i] = chars[i - 1]
        elif ch == "W" and chars[i - 1] in _VOWELS:
            chars[i] = chars[i - 1]
        if chars[i] != key[-1]:
            key.append(chars[i])
        i += 1

    if len(key) > 1 and key[-1] == "S":
        key.pop()
    if len(key) > 2 and key[-2:] == ["A", "Y"]:
        key[-2:] = ["Y"]
    if len(key) > 1 and key[-1] == "A":
        key.pop()
    code = "".join(key)
    return code[:max_length] if max_length else code
