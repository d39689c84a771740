"""Raw text to clean token sequences.

The cleaning pipeline is the same for training, evaluation, and
prediction-time inputs: strip HTML markup, lowercase and tokenize on
non-alphanumeric runs, then drop short tokens and stop words.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ingest import Corpus, LabeledDocument
from .stopwords import StopWordList

DEFAULT_MIN_TOKEN_LEN = 3

_NAMED_ENTITIES = {
    "nbsp": " ",  # decoded to a plain space, not U+00A0
    "amp": "&",
    "lt": "<",
    "gt": ">",
    "quot": '"',
}

# Longest recognizable entity body: "#" + up to 7 digits, or a name.
_MAX_ENTITY_BODY = 8


@dataclass(frozen=True)
class TokenSequence:
    """Ordered lowercase tokens surviving the cleaning pipeline."""

    tokens: tuple[str, ...]
    source_id: str = ""

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)


def _emit(out: list[str], ch: str) -> None:
    # Newlines and tabs (including decoded ones) become single spaces.
    if ch in ("\n", "\r", "\t"):
        out.append(" ")
    else:
        out.append(ch)


def _decode_entity(raw: str, pos: int) -> tuple[str, int] | None:
    """Decode an entity starting at raw[pos] == '&'.

    Returns (decoded_text, chars_consumed) or None when the span is not a
    recognizable entity and the '&' should pass through literally.
    """
    end = raw.find(";", pos + 1, pos + 2 + _MAX_ENTITY_BODY)
    if end == -1:
        return None
    body = raw[pos + 1 : end]
    if body in _NAMED_ENTITIES:
        return _NAMED_ENTITIES[body], end - pos + 1
    if body.startswith("#"):
        digits = body[1:]
        try:
            if digits[:1] in ("x", "X"):
                code = int(digits[1:], 16)
            else:
                code = int(digits)
        except ValueError:
            return None
        if 0 <= code <= 0x10FFFF:
            return chr(code), end - pos + 1
    return None


def strip_html(raw: str) -> str:
    """Remove tags and script/style bodies from (possibly malformed) markup.

    A hand-written scanner rather than a regex: it must skip everything
    inside <script> and <style> elements and survive unclosed tags.  A tag
    consumes input up to the next '>' (or end of input); a lone '<' not
    followed by a letter, '/', or '!' is literal text.  The five common
    named entities and numeric character references are decoded; decoded
    characters are emitted directly and never rescanned as markup.
    """
    out: list[str] = []
    i = 0
    n = len(raw)
    skip_until: str | None = None  # lowercase "script" or "style"

    while i < n:
        if skip_until is not None:
            # Inside a script/style body: drop text until the closing tag.
            if raw[i] == "<" and raw[i + 1 : i + 2] == "/":
                name_end = i + 2
                while name_end < n and raw[name_end].isalpha():
                    name_end += 1
                if raw[i + 2 : name_end].lower() == skip_until:
                    gt = raw.find(">", name_end)
                    i = n if gt == -1 else gt + 1
                    skip_until = None
                    continue
            i += 1
            continue

        ch = raw[i]
        if ch == "<":
            nxt = raw[i + 1 : i + 2]
            if nxt.isalpha() or nxt in ("/", "!"):
                gt = raw.find(">", i + 1)
                tag_body = raw[i + 1 :] if gt == -1 else raw[i + 1 : gt]
                tag_end = n if gt == -1 else gt + 1
                if nxt.isalpha():
                    name_end = 0
                    while name_end < len(tag_body) and tag_body[name_end].isalpha():
                        name_end += 1
                    name = tag_body[:name_end].lower()
                    self_closing = tag_body.rstrip().endswith("/")
                    if name in ("script", "style") and not self_closing:
                        skip_until = name
                i = tag_end
                continue
            _emit(out, ch)
            i += 1
            continue
        if ch == "&":
            decoded = _decode_entity(raw, i)
            if decoded is not None:
                text, consumed = decoded
                for dch in text:
                    _emit(out, dch)
                i += consumed
                continue
            _emit(out, ch)
            i += 1
            continue
        _emit(out, ch)
        i += 1

    return "".join(out)


def tokenize(text: str) -> list[str]:
    """Lowercase and split on maximal runs of non-alphanumeric characters."""
    tokens: list[str] = []
    current: list[str] = []
    for ch in text.lower():
        if ch.isalnum():
            current.append(ch)
        elif current:
            tokens.append("".join(current))
            current = []
    if current:
        tokens.append("".join(current))
    return tokens


def filter_tokens(
    tokens: list[str],
    stops: StopWordList,
    min_len: int = DEFAULT_MIN_TOKEN_LEN,
    source_id: str = "",
) -> TokenSequence:
    """Drop tokens shorter than ``min_len`` and stop-list members."""
    if min_len < 1:
        raise ValueError(f"min_len must be >= 1, got {min_len}")
    kept = tuple(t for t in tokens if len(t) >= min_len and t not in stops.words)
    return TokenSequence(tokens=kept, source_id=source_id)


def preprocess_document(
    doc: LabeledDocument,
    stops: StopWordList,
    min_len: int = DEFAULT_MIN_TOKEN_LEN,
) -> TokenSequence:
    """Full cleaning pipeline for one document; may yield no tokens."""
    return filter_tokens(tokenize(strip_html(doc.text)), stops, min_len, source_id=doc.id)


def preprocess_corpus(
    corpus: Corpus,
    stops: StopWordList,
    min_len: int = DEFAULT_MIN_TOKEN_LEN,
) -> list[TokenSequence]:
    return [preprocess_document(doc, stops, min_len) for doc in corpus.documents]
