"""Command-line interface: text corpora in, plot-ready TSV out.

Every output starts with '#'-prefixed header lines recording the
resolved parameters, including a ``# replay:`` line that reproduces the
run; identical parameters and seed give byte-identical files. Sequence
outputs (normalize, shuffle, synth) carry the same header followed by
one ASCII byte per symbol; all subcommands skip leading '#' lines when
reading input, so outputs chain into further analyses.
"""

from __future__ import annotations

import argparse
import os
import shlex
import sys
from contextlib import contextmanager
from typing import IO, Sequence

from .divergence import jsd_profile
from .lexicon import band_jsd, build_lexicon, compare_halves, partition_bands, zipf_fit
from .nullmodels import (
    letter_shuffle,
    two_regime_sequence,
    window_permute,
    window_shuffle,
    word_shuffle,
)
from .textnorm import (
    NormalizedText,
    decode_symbols,
    normalize,
    normalize_stream,
    symbol_code,
    symbol_name,
    tokenize,
)
from .walk import average_displacement, default_k_grid, displacement, fit_exponent, indicator

SEED_ENV = "LETTERCORR_SEED"


def _fmt(value: float) -> str:
    return format(value, ".12g")


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _strip_header(data: bytes) -> bytes:
    # leading '#' comment lines are tool metadata, not text
    while data.startswith(b"#"):
        nl = data.find(b"\n")
        if nl < 0:
            return b""
        data = data[nl + 1 :]
    return data


def _load_text(path: str, trim: bool = False) -> NormalizedText:
    data = _read_bytes(path)
    if data.startswith(b"# lettercorr "):
        # our own sequence files are verbatim symbols; re-normalizing
        # would collapse the repeated spaces surrogates may contain
        return decode_symbols(_strip_header(data))
    return normalize(_strip_header(data), trim=trim)


@contextmanager
def _open_output(path: str):
    if path == "-":
        yield sys.stdout.buffer
        sys.stdout.buffer.flush()
    else:
        try:
            fh = open(path, "wb")
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
        with fh:
            yield fh


def _write_header(out: IO[bytes], replay: list[str], params: dict[str, object]) -> None:
    out.write(("# lettercorr " + replay[0] + "\n").encode())
    out.write(("# replay: " + shlex.join(replay) + "\n").encode())
    for key, val in params.items():
        out.write(f"# {key}: {val}\n".encode())


def _resolve_seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    raise ValueError(f"--seed is required (or set {SEED_ENV})")


def _parse_range(text: str, flag: str) -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError(f"{flag} must look like MIN:MAX, got {text!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueError(f"{flag} must hold two integers, got {text!r}") from None
    return lo, hi


def _parse_letters(values: list[str]) -> list[int]:
    codes: list[int] = []
    for value in values:
        for item in value.split(","):
            item = item.strip()
            if item:
                codes.append(symbol_code(item))
    if not codes:
        raise ValueError("at least one letter is required")
    return codes


class _HeaderSkippingReader:
    """Serves a pre-read first chunk, then delegates to the stream."""

    def __init__(self, fh: IO[bytes], first: bytes) -> None:
        self._fh = fh
        self._first = first

    def read(self, size: int = -1) -> bytes:
        if self._first:
            if size is None or size < 0:
                out, self._first = self._first, b""
                return out + self._fh.read(size)
            out, self._first = self._first[:size], self._first[size:]
            return out
        return self._fh.read(size)


def cmd_normalize(args: argparse.Namespace) -> int:
    replay = ["normalize", "--input", args.input]
    if args.trim:
        replay.append("--trim")

    def run(src: IO[bytes], out: IO[bytes]) -> None:
        first = src.read(1 << 20)
        reader = _HeaderSkippingReader(src, _strip_header(first))
        _write_header(out, replay, {"input": args.input})
        normalize_stream(reader, out, trim=args.trim)

    with _open_output(args.output) as out:
        if args.input == "-":
            run(sys.stdin.buffer, out)
        else:
            try:
                src = open(args.input, "rb")
            except OSError as exc:
                raise OSError(f"cannot read {args.input}: {exc.strerror or exc}") from exc
            with src:
                run(src, out)
    return 0


def cmd_walk(args: argparse.Namespace) -> int:
    text = _load_text(args.input)
    if len(text) == 0:
        raise ValueError("empty text")
    letters = _parse_letters(args.letter)
    fit_range = _parse_range(args.fit, "--fit") if args.fit else None

    replay = ["walk", "--input", args.input]
    for code in letters:
        replay += ["--letter", symbol_name(code)]
    replay += ["--points-per-decade", str(args.points_per_decade)]
    if fit_range:
        replay += ["--fit", f"{fit_range[0]}:{fit_range[1]}"]
    if args.average:
        replay.append("--average")

    grid = default_k_grid(len(text), args.points_per_decade)
    names = [symbol_name(code) for code in letters]
    curves = [displacement(indicator(text, code), grid) for code in letters]
    if args.average:
        names.append("average")
        curves.append(average_displacement(curves))

    with _open_output(args.output) as out:
        _write_header(out, replay, {"input": args.input, "n": len(text)})
        for i, (name, curve) in enumerate(zip(names, curves)):
            if i:
                out.write(b"\n")
            out.write(f"# letter: {name}\n".encode())
            if fit_range:
                try:
                    fit = fit_exponent(curve, *fit_range)
                except ValueError as exc:
                    raise ValueError(f"letter {name}: {exc}") from None
                out.write(f"# alpha: {_fmt(fit.alpha)}\n".encode())
                out.write(f"# fit-range: {fit.k_min}:{fit.k_max}\n".encode())
                out.write(f"# rms-residual: {_fmt(fit.rms_residual)}\n".encode())
                if fit.excluded_zero:
                    out.write(f"# excluded-zero: {fit.excluded_zero}\n".encode())
            out.write(b"k\tF\n")
            for k, f in zip(curve.k, curve.f):
                out.write(f"{int(k)}\t{_fmt(float(f))}\n".encode())
    return 0


def cmd_shuffle(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args)
    text = _load_text(args.input)
    mode = args.mode
    if mode in ("window-sample", "window-permute"):
        if args.window is None:
            raise ValueError(f"--window is required for mode {mode}")
        if mode == "window-sample":
            result = window_shuffle(text, args.window, seed)
        else:
            result = window_permute(text, args.window, seed)
    elif mode == "letter":
        result = letter_shuffle(text, seed)
    else:
        result = word_shuffle(text, seed)

    replay = ["shuffle", "--input", args.input, "--mode", mode]
    if mode in ("window-sample", "window-permute"):
        replay += ["--window", str(args.window)]
    replay += ["--seed", str(seed)]
    with _open_output(args.output) as out:
        _write_header(out, replay, {"n": len(result)})
        out.write(result.to_bytes())
    return 0


def cmd_synth(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args)
    burst_start = args.burst_start
    if burst_start is None:
        burst_start = max((args.length - args.burst_len) // 2, 0)
    seq = two_regime_sequence(
        length=args.length,
        base_p=args.base_p,
        burst_p=args.burst_p,
        burst_len=args.burst_len,
        burst_start=burst_start,
        seed=seed,
    )
    replay = [
        "synth",
        "--length", str(args.length),
        "--base-p", str(args.base_p),
        "--burst-p", str(args.burst_p),
        "--burst-len", str(args.burst_len),
        "--burst-start", str(burst_start),
        "--seed", str(seed),
    ]
    with _open_output(args.output) as out:
        _write_header(out, replay, {"n": len(seq)})
        out.write(seq.to_bytes())
    return 0


def cmd_jsd_profile(args: argparse.Namespace) -> int:
    text = _load_text(args.input)
    step = args.step if args.step is not None else max(args.segment_length // 10, 1)
    include_space = args.alphabet == "with-space"
    profile = jsd_profile(text, args.segment_length, step, include_space=include_space)

    replay = [
        "jsd-profile",
        "--input", args.input,
        "--segment-length", str(args.segment_length),
        "--step", str(step),
        "--alphabet", args.alphabet,
    ]
    params: dict[str, object] = {"input": args.input, "n": len(text)}
    if len(profile):
        peak = int(profile.normalized.argmax())
        params["max-normalized"] = (
            f"{_fmt(float(profile.normalized[peak]))} at position {int(profile.positions[peak])}"
        )
    with _open_output(args.output) as out:
        _write_header(out, replay, params)
        out.write(b"position\traw\tfluct\tnormalized\n")
        for i in range(len(profile)):
            out.write(
                (
                    f"{int(profile.positions[i])}\t{_fmt(float(profile.raw[i]))}\t"
                    f"{_fmt(float(profile.fluct[i]))}\t{_fmt(float(profile.normalized[i]))}\n"
                ).encode()
            )
    return 0


def cmd_zipf(args: argparse.Namespace) -> int:
    text = _load_text(args.input)
    lex = build_lexicon(tokenize(text))
    fit_range = _parse_range(args.fit, "--fit") if args.fit else None

    replay = ["zipf", "--input", args.input, "--top", str(args.top)]
    if fit_range:
        replay += ["--fit", f"{fit_range[0]}:{fit_range[1]}"]
    params: dict[str, object] = {
        "input": args.input,
        "word-types": len(lex),
        "total-letters": lex.total_letters,
    }
    if fit_range:
        params["zipf-exponent"] = _fmt(zipf_fit(lex, *fit_range))
        params["fit-range"] = f"{fit_range[0]}:{fit_range[1]}"
    limit = args.top if args.top > 0 else len(lex)
    with _open_output(args.output) as out:
        _write_header(out, replay, params)
        out.write(b"rank\tword\tcount\tlength\tletter_share\n")
        for e in lex.entries[:limit]:
            out.write(
                f"{e.rank}\t{e.word}\t{e.count}\t{e.length}\t{_fmt(e.letter_share)}\n".encode()
            )
    return 0


def cmd_bands(args: argparse.Namespace) -> int:
    text = _load_text(args.input)
    lex = build_lexicon(tokenize(text))
    partition = partition_bands(lex, args.band_count, args.target_share)

    replay = [
        "bands",
        "--input", args.input,
        "--band-count", str(args.band_count),
        "--target-share", str(args.target_share),
    ]
    with _open_output(args.output) as out:
        _write_header(
            out,
            replay,
            {
                "input": args.input,
                "word-types": len(lex),
                "degenerate": str(partition.degenerate).lower(),
            },
        )
        out.write(b"band\trank_lo\trank_hi\tword_types\tletter_share\n")
        for band in partition.bands:
            out.write(
                (
                    f"{band.index}\t{band.rank_lo}\t{band.rank_hi}\t"
                    f"{band.word_types}\t{_fmt(band.letter_share)}\n"
                ).encode()
            )
    return 0


def cmd_band_jsd(args: argparse.Namespace) -> int:
    text = _load_text(args.input)
    lex = build_lexicon(tokenize(text))
    partition = partition_bands(lex, args.band_count, args.target_share)
    report = band_jsd(text, lex, partition, args.segment_length)

    replay = [
        "band-jsd",
        "--input", args.input,
        "--band-count", str(args.band_count),
        "--target-share", str(args.target_share),
        "--segment-length", str(args.segment_length),
    ]
    with _open_output(args.output) as out:
        _write_header(
            out,
            replay,
            {"input": args.input, "n": len(text), "segment-length": report.segment_length},
        )
        out.write(b"band\trank_lo\trank_hi\tword_types\tpairs\tmean_normalized\tmean_letters\n")
        for e in report.entries:
            band = e.band
            out.write(
                (
                    f"{band.index}\t{band.rank_lo}\t{band.rank_hi}\t{band.word_types}\t"
                    f"{e.pair_count}\t{_fmt(e.mean_normalized)}\t{_fmt(e.mean_trials)}\n"
                ).encode()
            )
    return 0


def cmd_halves(args: argparse.Namespace) -> int:
    text = _load_text(args.input)
    comp = compare_halves(text)
    ratios = []
    for spec in args.ratio or []:
        parts = spec.split(":")
        if len(parts) != 2 or not all(parts):
            raise ValueError(f"--ratio must look like WORD:WORD, got {spec!r}")
        ratios.append((parts[0], parts[1]))

    replay = ["halves", "--input", args.input, "--top", str(args.top)]
    for numer, denom in ratios:
        replay += ["--ratio", f"{numer}:{denom}"]
    params: dict[str, object] = {
        "input": args.input,
        "split-at": comp.split_at,
        "first-tokens": comp.first_tokens,
        "second-tokens": comp.second_tokens,
    }
    for numer, denom in ratios:
        params[f"ratio {numer}/{denom}"] = (
            f"first={_fmt(comp.count_ratio(numer, denom, 1))} "
            f"second={_fmt(comp.count_ratio(numer, denom, 2))}"
        )
    words = comp.words()
    if args.top > 0:
        words = words[: args.top]
    with _open_output(args.output) as out:
        _write_header(out, replay, params)
        out.write(b"word\tcount_first\tcount_second\tfreq_first\tfreq_second\trel_change\n")
        for w in words:
            out.write(
                (
                    f"{w}\t{comp.first.get(w, 0)}\t{comp.second.get(w, 0)}\t"
                    f"{_fmt(comp.frequency(w, 1))}\t{_fmt(comp.frequency(w, 2))}\t"
                    f"{_fmt(comp.relative_change(w))}\n"
                ).encode()
            )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lettercorr",
        description="Long-range letter correlation analysis for text corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p: argparse.ArgumentParser, with_input: bool = True) -> None:
        if with_input:
            p.add_argument("--input", "-i", default="-", help="input text file ('-' for stdin)")
        p.add_argument("--output", "-o", default="-", help="output file ('-' for stdout)")

    p = sub.add_parser("normalize", help="convert raw text to the 27-symbol form")
    add_io(p)
    p.add_argument("--trim", action="store_true", help="drop the leading/trailing space")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("walk", help="displacement curve F(k) for letter indicators")
    add_io(p)
    p.add_argument(
        "--letter", "-l", action="append", required=True,
        help="letter 'a'..'z' or 'space'; repeat or comma-separate for several",
    )
    p.add_argument("--points-per-decade", type=int, default=20, help="k-grid density")
    p.add_argument("--fit", help="fit range MIN:MAX for the scaling exponent")
    p.add_argument("--average", action="store_true", help="append the mean over the letters")
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("shuffle", help="surrogate sequences preserving chosen statistics")
    add_io(p)
    p.add_argument(
        "--mode", required=True,
        choices=["window-sample", "window-permute", "letter", "word"],
    )
    p.add_argument("--window", type=int, help="window size for the window modes")
    p.add_argument("--seed", type=int, help=f"RNG seed (default: ${SEED_ENV})")
    p.set_defaults(func=cmd_shuffle)

    p = sub.add_parser("synth", help="two-regime Bernoulli sequence over {'a', space}")
    add_io(p, with_input=False)
    p.add_argument("--length", type=int, default=1_200_000)
    p.add_argument("--base-p", type=float, default=0.062)
    p.add_argument("--burst-p", type=float, default=0.1054)
    p.add_argument("--burst-len", type=int, default=6250)
    p.add_argument("--burst-start", type=int, help="default: centered")
    p.add_argument("--seed", type=int, help=f"RNG seed (default: ${SEED_ENV})")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("jsd-profile", help="divergence of adjacent segments along the text")
    add_io(p)
    p.add_argument("--segment-length", "-L", type=int, required=True)
    p.add_argument("--step", type=int, help="boundary increment (default: segment length / 10)")
    p.add_argument(
        "--alphabet", choices=["with-space", "letters-only"], default="with-space"
    )
    p.set_defaults(func=cmd_jsd_profile)

    p = sub.add_parser("zipf", help="rank-frequency table and Zipf exponent")
    add_io(p)
    p.add_argument("--top", type=int, default=0, help="rows to emit (0 = all)")
    p.add_argument("--fit", help="rank range MIN:MAX for the exponent fit")
    p.set_defaults(func=cmd_zipf)

    p = sub.add_parser("bands", help="partition the lexicon into letter-share bands")
    add_io(p)
    p.add_argument("--band-count", type=int, default=5)
    p.add_argument("--target-share", type=float, default=0.2)
    p.set_defaults(func=cmd_bands)

    p = sub.add_parser("band-jsd", help="mean normalized divergence per lexicon band")
    add_io(p)
    p.add_argument("--band-count", type=int, default=5)
    p.add_argument("--target-share", type=float, default=0.2)
    p.add_argument("--segment-length", "-L", type=int, default=100_000)
    p.set_defaults(func=cmd_band_jsd)

    p = sub.add_parser("halves", help="word frequencies in the first vs second half")
    add_io(p)
    p.add_argument("--top", type=int, default=50, help="rows to emit (0 = all)")
    p.add_argument(
        "--ratio", action="append",
        help="emit the count ratio of two words per half, e.g. the:a; repeatable",
    )
    p.set_defaults(func=cmd_halves)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
