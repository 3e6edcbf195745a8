"""Text normalization for the note classifier.

Pipeline per document: whitespace chunks are first checked against the
special-token patterns (onion address, URL, email, bitcoin address — in
that precedence order), everything else is lowercased, split on
non-alphanumeric boundaries, filtered for length and stopwords, and
alphabetic tokens are passed through a deterministic suffix-stripping
stemmer. No external linguistic data is consulted; the stopword list and
stemmer are frozen here so a model and its inference path can never drift
apart. ``PREPROCESS_TAG`` names this scheme and is recorded in every
trained bundle.
"""

from __future__ import annotations

import re
from typing import List

PREPROCESS_TAG = "rg-text-v1"

TOKEN_URL = "__url__"
TOKEN_ONION = "__onion__"
TOKEN_BTCADDR = "__btcaddr__"
TOKEN_EMAIL = "__email__"

# Frozen stopword list: common English function words plus the fragments
# that contractions shed under alphanumeric tokenization (ll, re, ve, ...).
STOPWORDS = frozenset("""
    a about above after again against ain all am an and any are aren as at
    be because been before being below between both but by can could couldn
    did didn do does doesn doing down during each few for from further had
    hadn has hasn have haven having he her here hers herself him himself his
    how if in into is isn it its itself just let ll ma me might mightn more
    most must mustn my myself needn no nor not now of off on once only or
    other our ours ourselves out over own re same shall shan she should
    shouldn so some such than that the their theirs them themselves then
    there these they this those through to too under until up us ve very was
    wasn we were weren what when where which while who whom why will with won
    would wouldn you your yours yourself yourselves
""".split())

_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)
_STRIP_CHARS = "\"'`()[]{}<>.,;:!?#*|~^=+“”‘’"

_ONION_RE = re.compile(r"\.onion(?=$|[/:?#])", re.IGNORECASE)
_URL_RE = re.compile(r"^(?:https?://|www\.)\S+$|^\S+://\S+$", re.IGNORECASE)
_EMAIL_RE = re.compile(r"^[\w.+-]+@[\w-]+(?:\.[\w-]+)+$")
_BTC_RE = re.compile(r"^(?:bc1[ac-hj-np-z02-9]{11,71}|[13][1-9A-HJ-NP-Za-km-z]{24,33})$")


def _special_token(chunk: str) -> str | None:
    # Precedence: onion > url > email > btcaddr.
    if _ONION_RE.search(chunk):
        return TOKEN_ONION
    if _URL_RE.match(chunk):
        return TOKEN_URL
    if _EMAIL_RE.match(chunk):
        return TOKEN_EMAIL
    if _BTC_RE.match(chunk):
        return TOKEN_BTCADDR
    return None


def preprocess(text: str) -> List[str]:
    """Normalize raw text into the token stream the models are trained on."""
    tokens: List[str] = []
    for raw_chunk in text.split():
        chunk = raw_chunk.strip(_STRIP_CHARS)
        if not chunk:
            continue
        special = _special_token(chunk)
        if special is not None:
            tokens.append(special)
            continue
        for word in _WORD_RE.findall(chunk.lower()):
            if len(word) < 2 or word in STOPWORDS:
                continue
            if word.isascii() and word.isalpha():
                word = stem(word)
            tokens.append(word)
    return tokens


# ---------------------------------------------------------------------------
# Suffix-stripping stemmer (Porter's classic rule set).

_VOWELS = "aeiou"


def _cons(word: str, i: int) -> bool:
    ch = word[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        return i == 0 or not _cons(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Count VC sequences in the [C](VC)^m[V] decomposition."""
    m = 0
    for i in range(1, len(stem)):
        if _cons(stem, i) and not _cons(stem, i - 1):
            m += 1
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _cons(stem, i) for i in range(len(stem)))


def _ends_double_cons(word: str) -> bool:
    return len(word) >= 2 and word[-1] == word[-2] and _cons(word, len(word) - 1)


def _ends_cvc(word: str) -> bool:
    n = len(word)
    if n < 3:
        return False
    if not (_cons(word, n - 3) and not _cons(word, n - 2) and _cons(word, n - 1)):
        return False
    return word[-1] not in "wxy"


_STEP2 = [
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"), ("abli", "able"), ("alli", "al"), ("entli", "ent"),
    ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
    ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
]
_STEP3 = [
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
]
_STEP4 = [
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement", "ment",
    "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
]


def _longest_match(word: str, suffixes) -> str | None:
    best = None
    for suffix in suffixes:
        if word.endswith(suffix) and (best is None or len(suffix) > len(best)):
            best = suffix
    return best


def stem(word: str) -> str:
    """Deterministic stem of a lowercase ASCII word; words of length <= 2 pass through."""
    if len(word) <= 2:
        return word

    # Step 1a: plurals.
    if word.endswith("sses"):
        word = word[:-2]
    elif word.endswith("ies"):
        word = word[:-2]
    elif not word.endswith("ss") and word.endswith("s"):
        word = word[:-1]

    # Step 1b: -eed / -ed / -ing.
    if word.endswith("eed"):
        if _measure(word[:-3]) > 0:
            word = word[:-1]
    else:
        removed = False
        if word.endswith("ed") and _has_vowel(word[:-2]):
            word = word[:-2]
            removed = True
        elif word.endswith("ing") and _has_vowel(word[:-3]):
            word = word[:-3]
            removed = True
        if removed:
            if word.endswith(("at", "bl", "iz")):
                word += "e"
            elif _ends_double_cons(word) and word[-1] not in "lsz":
                word = word[:-1]
            elif _measure(word) == 1 and _ends_cvc(word):
                word += "e"

    # Step 1c: -y with a vowel in the stem.
    if word.endswith("y") and _has_vowel(word[:-1]):
        word = word[:-1] + "i"

    # Step 2: derivational endings, longest matching suffix decides.
    suffix = _longest_match(word, [s for s, _ in _STEP2])
    if suffix is not None and _measure(word[: -len(suffix)]) > 0:
        word = word[: -len(suffix)] + dict(_STEP2)[suffix]

    # Step 3.
    suffix = _longest_match(word, [s for s, _ in _STEP3])
    if suffix is not None and _measure(word[: -len(suffix)]) > 0:
        word = word[: -len(suffix)] + dict(_STEP3)[suffix]

    # Step 4: strip residual suffixes from long stems.
    suffix = _longest_match(word, _STEP4)
    if suffix is not None:
        stem_part = word[: -len(suffix)]
        if _measure(stem_part) > 1 and (suffix != "ion" or stem_part.endswith(("s", "t"))):
            word = stem_part

    # Step 5a: trailing -e.
    if word.endswith("e"):
        m = _measure(word[:-1])
        if m > 1 or (m == 1 and not _ends_cvc(word[:-1])):
            word = word[:-1]

    # Step 5b: -ll reduction.
    if word.endswith("ll") and _measure(word[:-1]) > 1:
        word = word[:-1]

    return word
