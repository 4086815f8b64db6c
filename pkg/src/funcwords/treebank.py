"""CoNLL-U parsing and dependency-tree traversals.

Surface tokens only: multiword-token ranges ("1-2") and empty nodes
("3.1") are skipped on input. Sentences with cyclic, self-looping, or
out-of-range heads are rejected with a diagnostic instead of aborting
the whole file.
"""

from __future__ import annotations

import gzip
import io
import logging
from dataclasses import dataclass, field
from pathlib import Path

log = logging.getLogger(__name__)

UPOS_TAGS = frozenset({
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
})


class ConlluParseError(ValueError):
    """Structurally malformed CoNLL-U input (bad columns, bad head field)."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


@dataclass(frozen=True)
class Token:
    """One surface token. ``head`` is a 1-based index, 0 for the root
    attachment; ``None`` marks a token from tag-only input with no parse."""

    index: int
    form: str
    lemma: str
    upos: str
    head: int | None
    deprel: str

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"token index must be >= 1, got {self.index}")
        if self.head is not None and self.head < 0:
            raise ValueError(f"head must be >= 0, got {self.head}")
        if self.head == self.index:
            raise ValueError(f"token {self.index} has itself as head")


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]
    sent_id: str | None = None
    text: str | None = None

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def token(self, index: int) -> Token:
        """Token at 1-based surface position ``index``."""
        if not 1 <= index <= len(self.tokens):
            raise IndexError(f"token index {index} out of range 1..{len(self.tokens)}")
        return self.tokens[index - 1]

    @property
    def is_parsed(self) -> bool:
        return all(t.head is not None for t in self.tokens)

    def root_indices(self) -> list[int]:
        return [t.index for t in self.tokens if t.head == 0]


@dataclass
class Treebank:
    language_code: str
    sentences: list[Sentence] = field(default_factory=list)
    source_path: str = ""

    def __post_init__(self):
        if not self.language_code:
            raise ValueError("language_code must be non-empty")

    def __len__(self):
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    def n_tokens(self) -> int:
        return sum(len(s) for s in self.sentences)


def _is_surface_id(id_field: str) -> bool:
    # "1-2" ranges and "3.1" empty nodes are not surface tokens
    return id_field.isdigit()


def _check_tree(tokens: list[Token]) -> str | None:
    """Return a rejection reason if the head relation is not a forest of
    trees rooted at 0, else None."""
    n = len(tokens)
    for tok in tokens:
        if tok.head is None or tok.head > n:
            return f"token {tok.index} has out-of-range head {tok.head}"
    if not any(tok.head == 0 for tok in tokens):
        return "no token attaches to the root"
    # walk each token to the root; revisiting a node within one walk is a cycle
    for tok in tokens:
        seen = set()
        cur = tok.index
        while cur != 0:
            if cur in seen:
                return f"cyclic head relation through token {cur}"
            seen.add(cur)
            cur = tokens[cur - 1].head
    return None


def parse_conllu(stream, language_code: str, source_path: str = "") -> Treebank:
    """Parse 10-column CoNLL-U text from an iterable of lines.

    Rejected sentences (cycles, self-loops, out-of-range heads) are logged
    and skipped; malformed lines raise ConlluParseError.
    """
    treebank = Treebank(language_code=language_code, source_path=source_path)
    pending: list[Token] = []
    sent_id = None
    text = None
    poisoned: str | None = None

    def flush():
        nonlocal pending, sent_id, text, poisoned
        if pending or poisoned:
            reason = poisoned or _check_tree(pending)
            if reason is None:
                treebank.sentences.append(
                    Sentence(tokens=tuple(pending), sent_id=sent_id, text=text)
                )
            else:
                label = sent_id or f"sentence {len(treebank.sentences) + 1}"
                log.warning("rejected %s in %s: %s", label, source_path or "<stream>", reason)
        pending = []
        sent_id = None
        text = None
        poisoned = None

    for line_number, line in enumerate(stream, start=1):
        line = line.rstrip("\n")
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("sent_id"):
                sent_id = body.split("=", 1)[1].strip() if "=" in body else None
            elif body.startswith("text") and "=" in body and body.split("=", 1)[0].strip() == "text":
                text = body.split("=", 1)[1].strip()
            continue
        fields = line.split("\t")
        if len(fields) != 10:
            raise ConlluParseError(
                f"expected 10 tab-separated columns, got {len(fields)}", line_number
            )
        if not _is_surface_id(fields[0]):
            continue  # multiword range or empty node
        try:
            head = int(fields[6])
        except ValueError:
            raise ConlluParseError(f"non-integer head {fields[6]!r}", line_number) from None
        if poisoned:
            continue
        try:
            token = Token(
                index=int(fields[0]),
                form=fields[1],
                lemma=fields[2],
                upos=fields[3],
                head=head,
                deprel=fields[7],
            )
        except ValueError as err:
            # self-loop etc.: reject the sentence, keep parsing the file
            poisoned = f"line {line_number}: {err}"
            continue
        pending.append(token)
    flush()
    return treebank


def load_treebank(path, language_code: str | None = None) -> Treebank:
    """Load a plain or gzip-compressed .conllu file."""
    path = Path(path)
    if language_code is None:
        language_code = language_code_from_filename(path)
    opener = gzip.open if path.suffix == ".gz" else open
    with opener(path, "rt", encoding="utf-8") as fh:
        return parse_conllu(fh, language_code, source_path=str(path))


def language_code_from_filename(path) -> str:
    """UD-style language code: filename stem up to the first '-'.

    "en_ewt-ud-train.conllu.gz" -> "en_ewt"; "sov.conllu" -> "sov".
    """
    name = Path(path).name
    for suffix in (".gz", ".conllu"):
        if name.endswith(suffix):
            name = name[: -len(suffix)]
    return name.split("-")[0]


def to_conllu(treebank: Treebank) -> str:
    """Serialize surface tokens back to 10-column CoNLL-U."""
    out = io.StringIO()
    for sentence in treebank:
        if sentence.sent_id is not None:
            out.write(f"# sent_id = {sentence.sent_id}\n")
        if sentence.text is not None:
            out.write(f"# text = {sentence.text}\n")
        for tok in sentence:
            head = "_" if tok.head is None else str(tok.head)
            out.write(
                "\t".join([
                    str(tok.index), tok.form, tok.lemma, tok.upos, "_", "_",
                    head, tok.deprel, "_", "_",
                ])
            )
            out.write("\n")
        out.write("\n")
    return out.getvalue()


def subtree_yield(sentence: Sentence, head_index: int) -> list[int]:
    """Indices of ``head_index`` plus all transitive dependents, in surface order."""
    if not 1 <= head_index <= len(sentence):
        raise IndexError(f"head index {head_index} out of range 1..{len(sentence)}")
    children: dict[int, list[int]] = {}
    for tok in sentence:
        if tok.head is not None and tok.head > 0:
            children.setdefault(tok.head, []).append(tok.index)
    result = []
    stack = [head_index]
    while stack:
        node = stack.pop()
        result.append(node)
        stack.extend(children.get(node, ()))
    return sorted(result)


def undirected_neighbors(sentence: Sentence, index: int) -> list[int]:
    """Head (if not root) plus direct dependents, edges taken as undirected."""
    if not 1 <= index <= len(sentence):
        raise IndexError(f"token index {index} out of range 1..{len(sentence)}")
    neighbors = []
    head = sentence.token(index).head
    if head is not None and head > 0:
        neighbors.append(head)
    for tok in sentence:
        if tok.head == index:
            neighbors.append(tok.index)
    return sorted(neighbors)
