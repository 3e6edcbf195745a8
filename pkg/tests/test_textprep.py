import string

from hypothesis import given, strategies as st

from ransomguard.textprep import (
    PREPROCESS_TAG,
    STOPWORDS,
    TOKEN_BTCADDR,
    TOKEN_EMAIL,
    TOKEN_ONION,
    TOKEN_URL,
    preprocess,
    stem,
)

# Full-run outputs of the classic suffix-stripping algorithm (hand-derived
# through every step, not per-step snippets).
STEM_VECTORS = {
    "caresses": "caress",
    "ponies": "poni",
    "ties": "ti",
    "caress": "caress",
    "cats": "cat",
    "feed": "feed",
    "agreed": "agre",
    "plastered": "plaster",
    "bled": "bled",
    "motoring": "motor",
    "sing": "sing",
    "conflated": "conflat",
    "sized": "size",
    "hopping": "hop",
    "tanned": "tan",
    "falling": "fall",
    "hissing": "hiss",
    "fizzed": "fizz",
    "failing": "fail",
    "filing": "file",
    "happy": "happi",
    "sky": "sky",
    "relational": "relat",
    "conditional": "condit",
    "rational": "ration",
    "digitizer": "digit",
    "operator": "oper",
    "feudalism": "feudal",
    "decisiveness": "decis",
    "hopefulness": "hope",
    "callousness": "callous",
    "electrical": "electr",
    "hopeful": "hope",
    "goodness": "good",
    "allowance": "allow",
    "inference": "infer",
    "airliner": "airlin",
    "gyroscopic": "gyroscop",
    "adjustable": "adjust",
    "defensible": "defens",
    "irritant": "irrit",
    "replacement": "replac",
    "adjustment": "adjust",
    "dependent": "depend",
    "adoption": "adopt",
    "communism": "commun",
    "activate": "activ",
    "effective": "effect",
    "bowdlerize": "bowdler",
    "probate": "probat",
    "rate": "rate",
    "cease": "ceas",
    "controll": "control",
    "roll": "roll",
    "oscillators": "oscil",
    "generalizations": "gener",
    # Domain words the vocabulary leans on.
    "encrypted": "encrypt",
    "encryption": "encrypt",
    "files": "file",
    "payment": "payment",
    "payments": "payment",
    "decrypt": "decrypt",
    "locked": "lock",
}


def test_stem_vectors():
    for word, expected in STEM_VECTORS.items():
        assert stem(word) == expected, f"{word}: {stem(word)} != {expected}"


def test_stem_short_words_pass_through():
    for word in ("a", "be", "is", "ox", ""):
        assert stem(word) == word


def test_stem_groups_related_forms():
    assert stem("encrypting") == stem("encrypted") == stem("encryption")
    assert stem("files") == stem("filing") == "file"


@given(st.text(alphabet=string.ascii_lowercase, min_size=3, max_size=20))
def test_stem_deterministic_and_alpha(word):
    out = stem(word)
    assert out == stem(word)
    assert out.isascii() and out.isalpha()
    assert len(out) <= len(word) + 1  # only the -e fixups can add a letter


def test_preprocess_basic_example():
    tokens = preprocess("Your FILES are encrypted!!!")
    assert "file" in tokens and "encrypt" in tokens
    assert "your" not in tokens and "are" not in tokens


def test_preprocess_empty():
    assert preprocess("") == []
    assert preprocess("  \t\n ") == []


def test_preprocess_special_tokens():
    tokens = preprocess("visit http://pay.example.onion now")
    assert tokens == ["visit", TOKEN_ONION]

    assert preprocess("see https://example.com/page?q=1")[-1] == TOKEN_URL
    assert TOKEN_EMAIL in preprocess("mail help@restore.example please")
    assert TOKEN_BTCADDR in preprocess("send to 1BoatSLRHtKNngkdXEeobR76b53LETtpyT today")
    assert TOKEN_BTCADDR in preprocess("wallet bc1qar0srrr7xfkvy5l643lydnw9re59gtzzwf5mdq asap")


def test_preprocess_onion_beats_url():
    # A URL that is also an onion address must map to the onion token.
    assert preprocess("http://abc.onion/path")[0] == TOKEN_ONION


def test_preprocess_plain_onion_word_not_special():
    # The bare word lacks the dotted form, so it stays an ordinary token
    # ("one" legitimately stems to "on").
    assert preprocess("chop one onion finely") == ["chop", "on", "onion", "fine"]


def test_preprocess_drops_short_and_stopwords():
    tokens = preprocess("I am a 2 x b12 c")
    assert tokens == ["b12"]
    for token in preprocess("the files and the keys of the system"):
        assert token not in STOPWORDS
        assert len(token) >= 2


def test_preprocess_splits_on_punctuation_and_underscores():
    assert preprocess("main_loop.restart(now)") == ["main", "loop", "restart"]


def test_preprocess_strips_surrounding_punctuation_before_matching():
    assert preprocess("(support@restore.example)") == [TOKEN_EMAIL]
    assert preprocess('"https://x.example/a".') == [TOKEN_URL]


def test_preprocess_case_folding():
    assert preprocess("ENCRYPTED Files FiLeS") == ["encrypt", "file", "file"]


@given(st.text(max_size=200))
def test_preprocess_output_invariants(text):
    for token in preprocess(text):
        assert len(token) >= 2
        assert token not in STOPWORDS
        assert token == token.lower()


def test_tag_is_stable():
    assert PREPROCESS_TAG == "rg-text-v1"
