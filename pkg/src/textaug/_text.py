"""Word tokenization shared by the lexical metrics, TF-IDF, and the mock provider."""

from __future__ import annotations


def tokenize(text: str, lowercase: bool = True) -> list[str]:
    """Split on Unicode whitespace, strip surrounding punctuation, drop empties.

    Interior punctuation survives, so contractions stay whole:
    "I can't believe it!" -> ["i", "can't", "believe", "it"].
    """
    if lowercase:
        text = text.lower()
    tokens = []
    for chunk in text.split():
        word = _strip_punct(chunk)
        if word:
            tokens.append(word)
    return tokens


def _strip_punct(chunk: str) -> str:
    start, end = 0, len(chunk)
    while start < end and _is_punct(chunk[start]):
        start += 1
    while end > start and _is_punct(chunk[end - 1]):
        end -= 1
    return chunk[start:end]


def _is_punct(ch: str) -> bool:
    return not (ch.isalnum() or ch == "_")
