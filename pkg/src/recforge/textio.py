"""Text formats: set files, indicator/word files, certificate blocks and traces.

Set file:        first line ``#horizon H``, then one integer per line, ascending.
Indicator/word:  a single line of 0/1 characters.
Certificates:    blocks of ``key: value`` lines separated by blank lines; each
                 block starts with ``kind: <name>``.
Traces:          certificate-style blocks, one per stage; words are stored
                 hex-packed with their bit length, window sets inline.
"""

import numpy as np

from .constructions.md import MdStage, MdTrace
from .constructions.sm import SmStage, SmTrace
from .windowset import WindowSet
from .words import PointPrefix, as_word, word_str


class FormatError(ValueError):
    pass


def format_set(S: WindowSet) -> str:
    lines = [f"#horizon {S.horizon}"] + [str(v) for v in S.tolist()]
    return "\n".join(lines) + "\n"


def parse_set(text) -> WindowSet:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#horizon"):
        raise FormatError("set file must start with '#horizon H'")
    try:
        horizon = int(lines[0].split()[1])
        values = [int(v) for v in lines[1:]]
    except (IndexError, ValueError) as err:
        raise FormatError(f"malformed set file: {err}") from None
    if values != sorted(values):
        raise FormatError("set file entries must be ascending")
    return WindowSet(horizon, values)


def format_word(x) -> str:
    return word_str(x) + "\n"


def parse_word(text, label="") -> PointPrefix:
    body = "".join(text.split())
    if not body or set(body) - {"0", "1"}:
        raise FormatError("word files hold a single line of 0/1 characters")
    return PointPrefix(as_word(body), label)


def parse_set_or_word(text, label=""):
    """Indicator prefix from either format (set files keep their horizon)."""
    if text.lstrip().startswith("#horizon"):
        S = parse_set(text)
        return PointPrefix(S.mask().astype(np.uint8), label)
    return parse_word(text, label)


def pack_word(w) -> str:
    w = as_word(w)
    return f"{w.size}:{np.packbits(w).tobytes().hex()}"


def unpack_word(s) -> np.ndarray:
    n, _, hexbits = s.partition(":")
    bits = np.unpackbits(np.frombuffer(bytes.fromhex(hexbits), dtype=np.uint8))
    return bits[:int(n)].copy()


def format_blocks(blocks) -> str:
    """``blocks`` is a list of lists of (key, value) pairs."""
    out = []
    for block in blocks:
        out.append("\n".join(f"{k}: {v}" for k, v in block))
    return "\n\n".join(out) + "\n"


def parse_blocks(text):
    blocks = []
    for chunk in text.strip().split("\n\n"):
        block = []
        for line in chunk.splitlines():
            if not line.strip():
                continue
            key, sep, value = line.partition(": ")
            if not sep:
                key, value = line.rstrip(":"), ""
            block.append((key, value))
        if block:
            blocks.append(block)
    return blocks


def _ints(s):
    return [int(v) for v in s.split()]


def _inline_set(S: WindowSet) -> str:
    return f"{S.horizon};" + " ".join(str(v) for v in S.tolist())


def _parse_inline_set(s) -> WindowSet:
    h, _, body = s.partition(";")
    return WindowSet(int(h), _ints(body))


def format_md_trace(tr: MdTrace) -> str:
    blocks = [[("kind", "MdTrace"), ("horizon", tr.horizon), ("requested", tr.requested),
               ("completed", tr.completed), ("reason", tr.reason or "none")]]
    for st in tr.stages:
        blocks.append([("stage", st.k), ("m", st.m), ("a", st.a), ("A", pack_word(st.word)),
                       ("tail_start", st.tail_start), ("tail_length", st.tail_length),
                       ("run", f"{st.run_start} {st.run_length}")])
    return format_blocks(blocks)


def parse_md_trace(text) -> MdTrace:
    blocks = [dict(b) for b in parse_blocks(text)]
    head = blocks[0]
    if head.get("kind") != "MdTrace":
        raise FormatError("not an md trace")
    tr = MdTrace(horizon=int(head["horizon"]), requested=int(head["requested"]),
                 reason=None if head["reason"] == "none" else head["reason"])
    for b in blocks[1:]:
        rs, rl = _ints(b["run"])
        tr.stages.append(MdStage(int(b["stage"]), unpack_word(b["A"]), int(b["a"]),
                                 int(b["tail_start"]), int(b["tail_length"]), rs, rl))
    return tr


def format_sm_trace(tr: SmTrace) -> str:
    blocks = [[("kind", "SmTrace"), ("horizon", tr.horizon), ("requested", tr.requested),
               ("completed", tr.completed), ("length", tr.length),
               ("reason", tr.reason or "none")]]
    for st in tr.stages:
        blocks.append([
            ("stage", st.m), ("a", st.a), ("A", pack_word(st.A)), ("b", st.b),
            ("B", pack_word(st.B)), ("r", st.r), ("l", st.l),
            ("W", _inline_set(st.windows)), ("u", _inline_set(st.u)),
            ("regions", " ".join(f"{s}-{e}" for s, e in st.regions)),
            ("placements", " ".join(f"{p}@{lv}" for p, lv in st.placements)),
        ])
    return format_blocks(blocks)


def parse_sm_trace(text) -> SmTrace:
    blocks = [dict(b) for b in parse_blocks(text)]
    head = blocks[0]
    if head.get("kind") != "SmTrace":
        raise FormatError("not an sm trace")
    tr = SmTrace(horizon=int(head["horizon"]), requested=int(head["requested"]),
                 length=int(head["length"]),
                 reason=None if head["reason"] == "none" else head["reason"])
    for b in blocks[1:]:
        regions = tuple(tuple(int(v) for v in item.split("-")) for item in b["regions"].split())
        placements = tuple(tuple(int(v) for v in item.split("@")) for item in b["placements"].split())
        tr.stages.append(SmStage(int(b["stage"]), unpack_word(b["A"]), unpack_word(b["B"]),
                                 int(b["r"]), int(b["l"]), _parse_inline_set(b["W"]),
                                 _parse_inline_set(b["u"]), regions, placements))
    return tr
