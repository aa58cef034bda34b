"""Canonical 27-symbol text representation and tokenization.

All analyses in this package run over sequences drawn from the alphabet
'a'..'z' plus the space symbol. This module converts raw text into that
form and splits it into words.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import BinaryIO

import numpy as np

SPACE = 26
ALPHABET = "abcdefghijklmnopqrstuvwxyz "
ALPHABET_SIZE = 27

# byte value -> symbol code; ASCII letters fold case, everything else
# (including every byte of a multibyte character) becomes the space code
_BYTE_TO_CODE = np.full(256, SPACE, dtype=np.uint8)
_BYTE_TO_CODE[np.arange(ord("a"), ord("z") + 1)] = np.arange(26, dtype=np.uint8)
_BYTE_TO_CODE[np.arange(ord("A"), ord("Z") + 1)] = np.arange(26, dtype=np.uint8)

_CODE_TO_BYTE = np.frombuffer(ALPHABET.encode("ascii"), dtype=np.uint8)

# byte-level table for the streaming path: fold A-Z, pass a-z, rest -> space
_STREAM_TABLE = bytes(
    c + 32 if ord("A") <= c <= ord("Z") else (c if ord("a") <= c <= ord("z") else ord(" "))
    for c in range(256)
)

_WORD = re.compile(rb"[a-z]+")


def symbol_code(letter: int | str) -> int:
    """Map a letter ('a'..'z'), ' ', 'space', or a raw code to a symbol code."""
    if isinstance(letter, str):
        if letter in (" ", "space"):
            return SPACE
        if len(letter) == 1 and "a" <= letter <= "z":
            return ord(letter) - ord("a")
        raise ValueError(f"unknown symbol {letter!r} (expected 'a'..'z' or 'space')")
    code = int(letter)
    if not 0 <= code <= SPACE:
        raise ValueError(f"symbol code {code} outside 0..{SPACE}")
    return code


def symbol_name(code: int) -> str:
    """Inverse of symbol_code, rendering the space code as 'space'."""
    if code == SPACE:
        return "space"
    if 0 <= code < 26:
        return ALPHABET[code]
    raise ValueError(f"symbol code {code} outside 0..{SPACE}")


@dataclass(frozen=True, eq=False)
class NormalizedText:
    """Sequence over the 27-symbol alphabet, one uint8 code per symbol.

    Codes 0..25 are 'a'..'z', 26 is the space symbol. Output of
    :func:`normalize` never contains two consecutive spaces; surrogate
    sequences from the null-model generators may.
    """

    codes: np.ndarray

    def __post_init__(self) -> None:
        codes = np.ascontiguousarray(self.codes, dtype=np.uint8)
        if codes.ndim != 1:
            raise ValueError("symbol codes must form a one-dimensional sequence")
        if codes.size and int(codes.max()) > SPACE:
            raise ValueError(f"symbol codes must lie in 0..{SPACE}")
        object.__setattr__(self, "codes", codes)

    def __len__(self) -> int:
        return self.codes.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NormalizedText):
            return NotImplemented
        return np.array_equal(self.codes, other.codes)

    def to_bytes(self) -> bytes:
        """One ASCII byte per symbol."""
        return _CODE_TO_BYTE[self.codes].tobytes()

    def render(self) -> str:
        return self.to_bytes().decode("ascii")

    def trimmed(self) -> "NormalizedText":
        """Copy without leading/trailing spaces."""
        keep = np.flatnonzero(self.codes != SPACE)
        if keep.size == 0:
            return NormalizedText(np.empty(0, dtype=np.uint8))
        return NormalizedText(self.codes[keep[0] : keep[-1] + 1])


@dataclass(frozen=True)
class Token:
    """A maximal space-free run of letters."""

    text: str
    start: int
    length: int


def normalize(raw: str | bytes, *, trim: bool = False) -> NormalizedText:
    """Convert raw text to the canonical 27-symbol sequence.

    ASCII letters are lowercased and every maximal run of other characters
    is replaced by exactly one space, so leading and trailing runs also
    leave a single space unless ``trim`` is set. Lowercasing is ASCII-only:
    accented or otherwise non-ASCII letters count as non-alphabetic. Bytes
    that do not decode are treated the same way.
    """
    if isinstance(raw, str):
        data = raw.encode("utf-8", errors="replace")
    else:
        data = bytes(raw)
    codes = _BYTE_TO_CODE[np.frombuffer(data, dtype=np.uint8)]
    if codes.size:
        is_space = codes == SPACE
        keep = np.ones(codes.size, dtype=bool)
        keep[1:] = ~(is_space[1:] & is_space[:-1])
        codes = codes[keep]
    text = NormalizedText(codes)
    return text.trimmed() if trim else text


def normalize_stream(
    src: BinaryIO,
    dst: BinaryIO,
    *,
    chunk_size: int = 1 << 20,
    trim: bool = False,
) -> int:
    """Normalize a byte stream into ``dst`` using bounded memory.

    Writes one ASCII byte per output symbol and returns the symbol count.
    Equivalent to :func:`normalize` on the whole input, but never holds
    more than a few chunks in memory.
    """
    written = 0
    offset = 0
    pending = False  # an unemitted space run separates the next letters
    started = False  # letters emitted so far (trim drops the leading run)
    while True:
        try:
            chunk = src.read(chunk_size)
        except OSError as exc:
            raise OSError(f"read failed at byte offset {offset}: {exc}") from exc
        if not chunk:
            break
        offset += len(chunk)
        parts = chunk.translate(_STREAM_TABLE).split(b" ")
        for idx, part in enumerate(parts):
            if idx > 0:
                pending = True
            if part:
                if pending:
                    if started or not trim:
                        dst.write(b" ")
                        written += 1
                    pending = False
                dst.write(part)
                written += len(part)
                started = True
    if pending and not trim:
        dst.write(b" ")
        written += 1
    return written


def decode_symbols(data: bytes) -> NormalizedText:
    """Strict inverse of ``NormalizedText.to_bytes``.

    Unlike :func:`normalize` this performs no case folding and no space
    collapsing, so surrogate sequences with repeated spaces survive a
    round trip through a file. Bytes outside 'a'..'z' and ' ' are an
    error.
    """
    buf = np.frombuffer(data, dtype=np.uint8)
    valid = ((buf >= ord("a")) & (buf <= ord("z"))) | (buf == ord(" "))
    if not np.all(valid):
        offset = int(np.argmin(valid))
        raise ValueError(
            f"invalid symbol byte 0x{buf[offset]:02x} at offset {offset} "
            "(expected 'a'..'z' or ' ')"
        )
    return NormalizedText(_BYTE_TO_CODE[buf])


def tokenize(text: NormalizedText) -> list[Token]:
    """Split normalized text into its words.

    Joining the results with single spaces reproduces the space-trimmed
    text; offsets refer to positions in ``text``.
    """
    data = text.to_bytes()
    return [
        Token(m.group().decode("ascii"), m.start(), m.end() - m.start())
        for m in _WORD.finditer(data)
    ]
