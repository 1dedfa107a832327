"""Prompt templates shared by the augmentation strategies and the offline mock.

These strings are part of the toolkit's provider protocol: the augmentation
code renders them, HTTP providers receive them verbatim, and the mock
recognizes them to decide which deterministic behaviour to apply.
"""

from __future__ import annotations

GENERATION_SYSTEM_MESSAGE = (
    "You are a helpful assistant. Output sentences separated by newline in "
    "reply to <prompt>. Sentences should vary in type, slang, length, "
    "structure, tone and style, sentences such as comments, responses, "
    "opinions, and facts. It’s not necessary to often use the "
    "emotion’s name in every sentence. Do not number output or use "
    "bullet point for the output."
)

GENERATION_USER_TEMPLATE = (
    "Generate {n} different sentences in various forms that express a strong "
    "emotional sentiment for the following emotion: {label}"
)

FEW_SHOT_HEADER = "Examples:"

PARAPHRASE_SYSTEM_MESSAGE = "You are a helpful assistant."

PARAPHRASE_P1_TEMPLATE = (
    "Paraphrase the following sentence. Output only the paraphrase.\n{text}"
)

PARAPHRASE_P2_TEMPLATE = (
    "Provide {n} distinct paraphrases of the following sentence, one per "
    "line, no numbering.\n{text}"
)

TRANSLATION_TEMPLATE = (
    "Translate the following text from {src} to {dst}. "
    "Output only the translation.\n{text}"
)


def generation_prompt(n: int, label: str, examples: list[str] | None = None) -> str:
    prompt = GENERATION_USER_TEMPLATE.format(n=n, label=label)
    if examples:
        prompt += "\n" + FEW_SHOT_HEADER + "\n" + "\n".join(examples)
    return prompt
