"""Command-line front end (``recforge``).

Exit codes: 0 all certificates valid, 2 construction partial, 3 precondition
failed or demo inapplicable, 4 certificate validation failure, 5 I/O error.
Argument problems exit with 64 (usage: missing or unknown flag), 65
(parameter out of range) or 66 (input file missing or unreadable).
"""

import argparse
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import bundle, textio
from .words import GENERATORS, generate

EX_USAGE = 64
EX_RANGE = 65
EX_NOINPUT = 66
MIN_HORIZON = 16


class ArgError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ArgError(f"{self.prog}: {message}", EX_USAGE)


@dataclass
class RunConfig:
    command: str
    inputs: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    out: Path = None
    verify: bool = False
    threads: int = None
    header: bool = True


def _common(p):
    p.add_argument("--out", help="bundle directory (created if missing)")
    p.add_argument("--verify", action="store_true",
                   help="recompute the bundle and re-check it independently")
    p.add_argument("--threads", type=int)
    p.add_argument("--no-header", action="store_true", help="omit the timestamp in report.txt")
    p.add_argument("--budget", type=int, help="cap on enumeration sizes")


def build_parser():
    parser = _Parser(prog="recforge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("families-check", help="syndetic/thick/density certificates of a set")
    p.add_argument("--input", action="append", required=True, help="set or indicator file")
    p.add_argument("--gap", type=int, default=8, help="gap for the piecewise syndetic witness")
    p.add_argument("--size", type=int, default=64, help="window length for densities")
    p.add_argument("--kmax", type=int, default=4, help="longest run length for thick syndeticity")
    _common(p)

    p = sub.add_parser("subshift-analyze", help="block complexity and recurrence of a word")
    p.add_argument("--word", "--input", dest="word", required=True)
    p.add_argument("--kmax", type=int, help="longest block length (<= H/4)")
    p.add_argument("--depth", type=int, help="recurrence depth (<= H/2)")
    _common(p)

    p = sub.add_parser("construct", help="md | sm | rapid-ip | ip-extract")
    p.add_argument("kind", choices=["md", "sm", "rapid-ip", "ip-extract"])
    p.add_argument("--input", action="append")
    p.add_argument("--word")
    p.add_argument("--stages", type=int, default=3)
    p.add_argument("--depth", type=int, default=4)
    _common(p)

    p = sub.add_parser("demo", help="fps | fs | desert counterexamples")
    p.add_argument("kind", choices=["fps", "fs", "desert"])
    p.add_argument("--word")
    p.add_argument("--input", action="append")
    p.add_argument("--block", default="1", help="the block A of the cylinder [A]")
    p.add_argument("--stages", type=int, default=3)
    p.add_argument("--depth", type=int, default=5)
    _common(p)

    p = sub.add_parser("independence", help="check | probe")
    p.add_argument("kind", choices=["check", "probe"])
    p.add_argument("--word", required=True)
    p.add_argument("--input", action="append", required=True,
                   help="query file with 'blocks:' and 'J:' lines")
    p.add_argument("--gap", type=int, default=2)
    p.add_argument("--size", type=int, default=2)
    _common(p)

    p = sub.add_parser("generate", help="write a built-in word: " + ", ".join(GENERATORS.values()))
    p.add_argument("spec")
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--out", required=True, help="word file to write")

    p = sub.add_parser("verify", help="re-check an existing bundle")
    p.add_argument("--out", required=True, help="bundle directory")
    return parser


def _readable(path):
    if path is None:
        return None
    if not os.path.isfile(path) or not os.access(path, os.R_OK):
        raise ArgError(f"cannot read input file {path}", EX_NOINPUT)
    return path


def _horizon_of(path):
    try:
        x = textio.parse_set_or_word(Path(path).read_text())
    except (OSError, UnicodeDecodeError) as err:
        raise ArgError(f"cannot read input file {path}: {err}", EX_NOINPUT) from None
    except ValueError as err:
        raise ArgError(f"malformed input file {path}: {err}", EX_RANGE) from None
    if x.horizon < MIN_HORIZON:
        raise ArgError(f"{path}: horizon {x.horizon} is below the minimum {MIN_HORIZON}", EX_RANGE)
    return x.horizon


def _positive(name, value):
    if value is not None and value < 1:
        raise ArgError(f"--{name} must be >= 1", EX_RANGE)


def _need(value, flag):
    if not value:
        raise ArgError(f"missing required flag {flag}", EX_USAGE)
    return value


def parse_args(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    if ns.command is None:
        raise ArgError("no command given", EX_USAGE)
    if ns.command == "verify":
        return RunConfig("verify", out=Path(ns.out))
    if ns.command == "generate":
        if ns.horizon < MIN_HORIZON:
            raise ArgError(f"--horizon must be >= {MIN_HORIZON}", EX_RANGE)
        return RunConfig("generate", params={"spec": ns.spec, "horizon": ns.horizon},
                         out=Path(ns.out))
    for name in ("stages", "depth", "gap", "size", "kmax", "budget", "threads"):
        _positive(name, getattr(ns, name, None))

    cfg = RunConfig(ns.command, verify=ns.verify, threads=ns.threads, header=not ns.no_header)
    budget = ns.budget
    if ns.command == "families-check":
        path = _readable(ns.input[0])
        H = _horizon_of(path)
        cfg.inputs = {"input": [path]}
        cfg.params = {"gap": ns.gap, "size": min(ns.size, H), "kmax": ns.kmax}
    elif ns.command == "subshift-analyze":
        path = _readable(ns.word)
        H = _horizon_of(path)
        kmax = ns.kmax if ns.kmax is not None else min(10, H // 4)
        depth = ns.depth if ns.depth is not None else min(16, H // 2)
        if kmax > H // 4:
            raise ArgError(f"--kmax {kmax} exceeds H/4 = {H // 4}", EX_RANGE)
        if depth > H // 2:
            raise ArgError(f"--depth {depth} exceeds H/2 = {H // 2}", EX_RANGE)
        cfg.inputs = {"word": path}
        cfg.params = {"kmax": kmax, "depth": depth, "mdepth": 6}
    elif ns.command == "construct":
        cfg.command = f"construct {ns.kind}"
        if ns.kind == "ip-extract":
            path = _readable(_need(ns.word or (ns.input or [None])[0], "--word"))
            H = _horizon_of(path)
            if ns.depth > H // 2:
                raise ArgError(f"--depth {ns.depth} exceeds H/2 = {H // 2}", EX_RANGE)
            cfg.inputs = {"word": path}
            cfg.params = {"depth": ns.depth}
        else:
            path = _readable(_need(ns.input, "--input")[0])
            _horizon_of(path)
            cfg.inputs = {"input": [path]}
            cfg.params = {"depth": ns.depth} if ns.kind == "rapid-ip" else {"stages": ns.stages}
    elif ns.command == "demo":
        cfg.command = f"demo {ns.kind}"
        if ns.kind == "desert":
            paths = _need(ns.input, "--input")
            if len(paths) != 2:
                raise ArgError("demo desert needs --input F1 --input F2", EX_USAGE)
            for path in paths:
                _horizon_of(_readable(path))
            cfg.inputs = {"input": paths}
            cfg.params = {"depth": ns.depth}
        else:
            path = _readable(_need(ns.word, "--word"))
            _horizon_of(path)
            if set(ns.block) - {"0", "1"} or not ns.block:
                raise ArgError("--block must be a non-empty 0/1 word", EX_RANGE)
            cfg.inputs = {"word": path}
            cfg.params = {"stages": ns.stages, "block": ns.block}
    elif ns.command == "independence":
        cfg.command = f"independence {ns.kind}"
        word = _readable(ns.word)
        _horizon_of(word)
        query = _readable(ns.input[0])
        cfg.inputs = {"word": word, "query": query}
        cfg.params = {"budget": budget}
        if ns.kind == "probe":
            cfg.params.update(gap=ns.gap, size=ns.size)
    cfg.out = Path(_need(ns.out, "--out"))
    return cfg


def _set_threads(n):
    if n is None:
        return
    try:
        import numba
    except ImportError:  # pragma: no cover
        return
    numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))


def run(cfg: RunConfig) -> int:
    try:
        if cfg.command == "generate":
            spec = cfg.params["spec"]
            try:
                x = generate(spec, cfg.params["horizon"])
            except ValueError as err:
                print(err, file=sys.stderr)
                return EX_RANGE
            cfg.out.parent.mkdir(parents=True, exist_ok=True)
            cfg.out.write_text(textio.format_word(x))
            return 0
        if cfg.command == "verify":
            code, problems = bundle.verify(cfg.out)
            for msg in problems:
                print(f"verify: {msg}", file=sys.stderr)
            print("verify: ok" if code == 0 else "verify: FAILED")
            return code
        _set_threads(cfg.threads)
        code = bundle.produce(cfg.command, cfg.params, cfg.inputs, cfg.out, header=cfg.header)
        print((cfg.out / "report.txt").read_text(), end="")
        if cfg.verify and code in (bundle.EXIT_OK, bundle.EXIT_PARTIAL):
            vcode, problems = bundle.verify(cfg.out)
            for msg in problems:
                print(f"verify: {msg}", file=sys.stderr)
            if vcode:
                return vcode
            print("verify: ok")
        return code
    except OSError as err:
        print(f"I/O error: {err}", file=sys.stderr)
        return bundle.EXIT_IO


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
    except ArgError as err:
        print(err, file=sys.stderr)
        return err.code
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
