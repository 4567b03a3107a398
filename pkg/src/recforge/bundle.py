"""Output bundles.

A bundle is a directory holding copies of the inputs, ``command.json`` (what
was run), ``report.txt`` (human summary), ``certificates.txt`` (key: value
blocks) and word/trace/set files.  Every producer has a matching checker that
reads the bundle back from disk and re-derives its claims with the
brute-force routines in :mod:`recforge.validate`.
"""

import datetime
import filecmp
import json
import shutil
import tempfile
from pathlib import Path
from types import SimpleNamespace

import numpy as np

from . import textio
from . import validate as V
from .constructions import entropy_bound_check, extract_ip, md_point, rapid_ip, sm_point
from .errors import BudgetExceeded, ConstructionError, PreconditionError
from .families import (density_report, piecewise_syndetic_witness, run_profile, syndetic_gap,
                       thickly_syndetic_profile)
from .independence import IndependenceQuery, check_independence, syndetic_independence_probe
from .product import fps_counterexample, fs_counterexample, recurrence_desert
from .subshift import (entropy_curve, minimality_certificate, minimal_bound, occurrences,
                       recurrence_certificate, weak_mixing_witness)
from .windowset import WindowSet
from .words import as_word, word_str

EXIT_OK = 0
EXIT_PARTIAL = 2
EXIT_PRECONDITION = 3
EXIT_INVALID = 4
EXIT_IO = 5

STATUS_NAMES = {EXIT_OK: "ok", EXIT_PARTIAL: "partial", EXIT_PRECONDITION: "inapplicable",
                EXIT_INVALID: "invalid", EXIT_IO: "io-error"}


class Bundle:
    def __init__(self, out: Path):
        self.out = Path(out)
        self.report = []
        self.certs = []
        self.status = EXIT_OK

    def say(self, line=""):
        self.report.append(line)

    def cert(self, kind, *pairs):
        self.certs.append([("kind", kind)] + [(k, v) for k, v in pairs])

    def write(self, name, text):
        (self.out / name).write_text(text)

    def finish(self, header):
        lines = []
        if header:
            stamp = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
            lines += ["# recforge report", f"# generated: {stamp}"]
        lines += self.report + [f"status: {STATUS_NAMES[self.status]}"]
        self.write("report.txt", "\n".join(lines) + "\n")
        self.write("certificates.txt", textio.format_blocks(self.certs) if self.certs else "")


def _read(bundle_dir, rel):
    return (Path(bundle_dir) / rel).read_text()


def _load_indicator(bundle_dir, rel):
    return textio.parse_set_or_word(_read(bundle_dir, rel), Path(rel).stem)


def _certs(bundle_dir):
    return [dict(b) for b in textio.parse_blocks(_read(bundle_dir, "certificates.txt"))]


def _pairs_table(d):
    return " ".join(f"{k}:{'none' if v is None else v}" for k, v in d.items())


def _parse_table(s, key=str):
    out = {}
    for item in s.split():
        k, _, v = item.rpartition(":")
        out[key(k)] = None if v == "none" else int(v)
    return out


# ---------------------------------------------------------------- families

def produce_families(b, p, inputs):
    x = _load_indicator(b.out, inputs["input"][0])
    S = WindowSet.from_mask(x.word.astype(bool))
    H = S.horizon
    b.say(f"families-check on a set of {len(S)} elements in [0, {H})")
    g = syndetic_gap(S)
    b.cert("SyndeticCert", ("gap", "absent" if g is None else g), ("limit", max(1, H // 4)))
    b.say(f"syndetic gap: {'absent (not syndetic on the window)' if g is None else g}")
    prof = run_profile(S)
    b.cert("ThickCert", *prof.fields())
    b.say(f"longest run: {prof.max_run} ({len(prof.runs)} runs)")
    gap = p["gap"]
    w = piecewise_syndetic_witness(S, gap)
    if w is None:
        b.cert("PiecewiseSyndeticCert", ("gap", gap), ("interval", "absent"))
    else:
        b.cert("PiecewiseSyndeticCert", *w.fields())
    b.say(f"piecewise syndetic at gap {gap}: {'no witness' if w is None else w.interval}")
    ts = thickly_syndetic_profile(S, p["kmax"])
    if ts is None:
        b.cert("ThicklySyndeticCert", ("n_max", p["kmax"]), ("entries", "absent"))
    else:
        b.cert("ThicklySyndeticCert", ("n_max", p["kmax"]), *ts.fields())
    b.say(f"thickly syndetic up to run length {p['kmax']}: {'no' if ts is None else 'yes'}")
    ell = min(p["size"], H)
    d = density_report(S, ell)
    b.cert("DensityCert", *d.fields())
    b.say(f"upper Banach density (l={ell}): {d.upper_banach}; upper density: {d.upper_density}")


def check_families(bundle_dir, cmd):
    x = _load_indicator(bundle_dir, cmd["inputs"]["input"][0])
    S = WindowSet.from_mask(x.word.astype(bool))
    problems = []
    for c in _certs(bundle_dir):
        kind = c["kind"]
        if kind == "SyndeticCert":
            if c["gap"] == "absent":
                problems += V.check_syndetic_absent(S, int(c["limit"]))
            else:
                problems += V.check_syndetic(S, int(c["gap"]))
        elif kind == "ThickCert":
            runs = [tuple(int(v) for v in r.split("+")) for r in c["runs"].split()]
            problems += V.check_thick(S, runs, int(c["max_run"]))
        elif kind == "PiecewiseSyndeticCert" and c["interval"] != "absent":
            a, e = (int(v) for v in c["interval"].split())
            problems += V.check_piecewise(S, int(c["gap"]), (a, e))
        elif kind == "ThicklySyndeticCert" and c["entries"] != "absent":
            entries = [tuple(int(v) for v in e.split(":")) for e in c["entries"].split()]
            problems += V.check_thickly_syndetic(S, entries)
        elif kind == "DensityCert":
            problems += V.check_density(S, int(c["window_length"]), c["upper_banach"],
                                        c["upper_density"])
    return problems


# ---------------------------------------------------------------- subshift

def produce_subshift(b, p, inputs):
    x = _load_indicator(b.out, inputs["word"])
    b.say(f"subshift-analyze on a prefix of length {x.horizon}")
    kmax, depth = p["kmax"], p["depth"]
    for st in entropy_curve(x, kmax):
        b.cert("BlockStats", ("k", st.k), ("count", st.count),
               ("entropy_estimate", f"{st.entropy_estimate:.12f}"), ("log_base", "e"))
        b.say(f"B_{st.k} = {st.count}, (1/k) ln B_k = {st.entropy_estimate:.6f}")
    rec = recurrence_certificate(x, depth)
    b.cert("RecurrenceCert", ("depth", depth), ("returns", _pairs_table(rec)))
    bad = [k for k, t in rec.items() if t is None]
    b.say(f"prefix cylinders returning, depth {depth}: "
          f"{'all' if not bad else f'fails from length {bad[0]}'}")
    mdepth = min(kmax, p["mdepth"])
    gaps = minimality_certificate(x, mdepth)
    b.cert("MinimalityCert", ("depth", mdepth), ("bound", minimal_bound(gaps)),
           ("gaps", _pairs_table(gaps)))
    b.say(f"largest block gap up to length {mdepth}: {minimal_bound(gaps)}")
    wm = weak_mixing_witness(x, mdepth)
    b.cert("WeakMixingCert", ("k", mdepth), ("witnesses", _pairs_table(wm)))
    b.say(f"{mdepth}-blocks with a weak-mixing witness: "
          f"{sum(v is not None for v in wm.values())} of {len(wm)}")


def check_subshift(bundle_dir, cmd):
    x = _load_indicator(bundle_dir, cmd["inputs"]["word"])
    problems = []
    for c in _certs(bundle_dir):
        kind = c["kind"]
        if kind == "BlockStats":
            n = V.block_count(x, int(c["k"]))
            if n != int(c["count"]):
                problems.append(f"B_{c['k']} recount {n} != {c['count']}")
        elif kind == "RecurrenceCert":
            problems += V.check_recurrence(x, _parse_table(c["returns"], int))
        elif kind == "MinimalityCert":
            problems += V.check_minimality(x, int(c["depth"]), _parse_table(c["gaps"]))
        elif kind == "WeakMixingCert":
            problems += V.check_weak_mixing(x, int(c["k"]), _parse_table(c["witnesses"]))
    return problems


# ---------------------------------------------------------------- constructions

def _md_certs(b, C, y, trace, stages):
    ones = occurrences(y, "1").elements
    inside = bool(C.word[ones].all())
    b.cert("MdCert", ("requested", stages), ("completed", trace.completed),
           ("length", y.horizon), ("ones_inside_support", str(inside).lower()))
    b.say(f"md-point: {trace.completed} stages (requested {stages}), |y| = {y.horizon}")
    b.say("stage lengths m_k: " + " ".join(str(s.m) for s in trace.stages))
    if trace.reason:
        b.say(f"stopped: {trace.reason}")
    a1 = trace.stage(1)
    w = piecewise_syndetic_witness(occurrences(y, a1.word), a1.m)
    b.cert("PiecewiseSyndeticCert", ("block", "A_1"), ("gap", a1.m),
           ("interval", "absent" if w is None else f"{w.interval[0]} {w.interval[1]}"))
    deep = [k for k in range(1, trace.completed + 1) if 4 * trace.stage(k).m <= y.horizon]
    if deep:
        for row in entropy_bound_check(y, trace, deep[-1]):
            b.cert("EntropyBound", ("k", row.k), ("m", row.m), ("blocks", row.blocks),
                   ("bound", row.bound), ("fine_bound", row.fine_bound),
                   ("holds", str(row.ok).lower()))
            b.say(f"B_{row.m}(y) = {row.blocks} <= (m+1)^3 = {row.bound}: {row.ok}")
    if not trace.complete:
        b.status = EXIT_PARTIAL


def _check_md_bundle(bundle_dir, C):
    y = _load_indicator(bundle_dir, "word.txt")
    trace = textio.parse_md_trace(_read(bundle_dir, "trace.txt"))
    problems = V.check_md(C, y, trace)
    s = V._bits(y)
    for c in _certs(bundle_dir):
        if c["kind"] == "PiecewiseSyndeticCert" and c["interval"] != "absent":
            occ = V.occurrence_set(s, V._bits(trace.stage(1).word))
            S = WindowSet(len(s) - trace.stage(1).m + 1, sorted(occ))
            a, e = (int(v) for v in c["interval"].split())
            problems += V.check_piecewise(S, int(c["gap"]), (a, e))
        elif c["kind"] == "EntropyBound":
            n = V.block_count(s, int(c["m"]))
            if n != int(c["blocks"]) or (n <= int(c["bound"])) != (c["holds"] == "true"):
                problems.append(f"entropy row for m = {c['m']} does not recount")
    return problems


def produce_md(b, p, inputs):
    C = _load_indicator(b.out, inputs["input"][0])
    y, trace = md_point(C, p["stages"])
    b.write("word.txt", textio.format_word(y))
    b.write("trace.txt", textio.format_md_trace(trace))
    _md_certs(b, C, y, trace, p["stages"])


def check_md(bundle_dir, cmd):
    return _check_md_bundle(bundle_dir, _load_indicator(bundle_dir, cmd["inputs"]["input"][0]))


def _sm_certs(b, F, y, trace, stages):
    ones = occurrences(y, "1").elements
    inside = bool(F.word[ones].all())
    b.cert("SmCert", ("requested", stages), ("completed", trace.completed),
           ("length", y.horizon), ("ones_inside_support", str(inside).lower()))
    b.say(f"sm-point: {trace.completed} stages (requested {stages}), |y| = {y.horizon}")
    if trace.reason:
        b.say(f"stopped: {trace.reason}")
    for st in trace.stages:
        occ = occurrences(y, st.A).elements
        hocc = y.horizon - st.a + 1
        gap = int(max(np.diff(occ).max(initial=0), occ[0] + 1, hocc - occ[-1]))
        b.cert("SmStageCert", ("stage", st.m), ("a", st.a), ("l", st.l), ("max_gap", gap),
               ("windows", len(st.windows)))
        b.say(f"A_{st.m}: |A| = {st.a}, largest gap {gap} <= l = {st.l}, "
              f"{len(st.windows)} windows of length {st.r}")
    if not trace.complete:
        b.status = EXIT_PARTIAL


def _check_sm_bundle(bundle_dir, F):
    y = _load_indicator(bundle_dir, "word.txt")
    trace = textio.parse_sm_trace(_read(bundle_dir, "trace.txt"))
    return V.check_sm(F, y, trace)


def produce_sm(b, p, inputs):
    F = _load_indicator(b.out, inputs["input"][0])
    y, trace = sm_point(F, p["stages"])
    b.write("word.txt", textio.format_word(y))
    b.write("trace.txt", textio.format_sm_trace(trace))
    _sm_certs(b, F, y, trace, p["stages"])


def check_sm(bundle_dir, cmd):
    return _check_sm_bundle(bundle_dir, _load_indicator(bundle_dir, cmd["inputs"]["input"][0]))


def _runs_plain(s):
    runs = []
    for i, ch in enumerate(s):
        if ch == "1":
            if runs and runs[-1][0] + runs[-1][1] == i:
                runs[-1][1] += 1
            else:
                runs.append([i, 1])
    return [tuple(r) for r in runs]


def produce_rapid(b, p, inputs):
    F = _load_indicator(b.out, inputs["input"][0])
    try:
        gens = rapid_ip(F, p["depth"])
        complete = True
    except ConstructionError as err:
        if err.partial is None:
            raise PreconditionError(str(err)) from err
        gens, complete = err.partial, False
        b.say(f"stopped: {err}")
    b.cert("RapidIPCert", ("requested", p["depth"]), ("depth", len(gens)),
           ("gens", " ".join(map(str, gens.gens))))
    b.say(f"rapid IP generators: {gens.gens}")
    if not complete:
        b.status = EXIT_PARTIAL


def check_rapid(bundle_dir, cmd):
    F = _load_indicator(bundle_dir, cmd["inputs"]["input"][0])
    c = _certs(bundle_dir)[0]
    return V.check_rapid_ip(_runs_plain(V._bits(F)), [int(v) for v in c["gens"].split()])


def produce_extract(b, p, inputs):
    x = _load_indicator(b.out, inputs["word"])
    try:
        gens = extract_ip(x, p["depth"])
    except ConstructionError as err:
        b.say(f"stopped: {err}")
        b.cert("IPExtractCert", ("requested", p["depth"]), ("gens", "absent"),
               ("failed_stage", err.stage))
        b.status = EXIT_PARTIAL
        return
    b.cert("IPExtractCert", ("requested", p["depth"]), ("gens", " ".join(map(str, gens.gens))))
    b.say(f"IP generators returning to the prefix cylinders: {gens.gens}")


def check_extract(bundle_dir, cmd):
    x = _load_indicator(bundle_dir, cmd["inputs"]["word"])
    c = _certs(bundle_dir)[0]
    if c["gens"] == "absent":
        return []
    return V.check_extract_ip(x, [int(v) for v in c["gens"].split()])


# ---------------------------------------------------------------- demos

def _joint_cert(b, rep):
    b.write("support.txt", textio.format_word(rep.support))
    b.cert("JointReturnCert", ("block_x", rep.A), ("block_y", rep.B),
           ("joint", " ".join(map(str, rep.joint.tolist())) or "empty"),
           ("inside_zero", str(rep.joint_ok).lower()))
    b.say(f"precondition: {rep.precondition}")
    b.say(f"joint return set: {{{', '.join(map(str, rep.joint.tolist()))}}}")


def _support_plain(x, A):
    s = V._bits(x)
    occ = V.occurrence_set(s, A)
    h = len(s) - len(A) + 1
    return "".join("1" if (i == 0 or i not in occ) else "0" for i in range(h))


def produce_demo(b, p, inputs, kind):
    x = _load_indicator(b.out, inputs["word"])
    block = p["block"]
    if kind == "fps":
        rep = fps_counterexample(x, block, p["stages"])
    else:
        rep = fs_counterexample(x, block, p["stages"])
    b.write("word.txt", textio.format_word(rep.y))
    if kind == "fps":
        b.write("trace.txt", textio.format_md_trace(rep.trace))
        _md_certs(b, rep.support, rep.y, rep.trace, p["stages"])
    else:
        b.write("trace.txt", textio.format_sm_trace(rep.trace))
        _sm_certs(b, rep.support, rep.y, rep.trace, p["stages"])
    _joint_cert(b, rep)
    if not rep.ok:
        b.status = EXIT_INVALID


def check_demo(bundle_dir, cmd, kind):
    x = _load_indicator(bundle_dir, cmd["inputs"]["word"])
    block = cmd["params"]["block"]
    support = _support_plain(x, block)
    problems = []
    if V._bits(_load_indicator(bundle_dir, "support.txt")) != support:
        problems.append("support differs from {0} + complement of the occurrence set")
    if kind == "fps":
        problems += _check_md_bundle(bundle_dir, support)
    else:
        problems += _check_sm_bundle(bundle_dir, support)
    y = _load_indicator(bundle_dir, "word.txt")
    c = [c for c in _certs(bundle_dir) if c["kind"] == "JointReturnCert"][0]
    joint = [] if c["joint"] == "empty" else [int(v) for v in c["joint"].split()]
    problems += V.check_joint(x, block, y, "1", joint)
    if any(v != 0 for v in joint):
        problems.append("joint return set is not inside {0}")
    return problems


def produce_desert(b, p, inputs):
    F1 = _load_indicator(b.out, inputs["input"][0])
    F2 = _load_indicator(b.out, inputs["input"][1])
    rep = recurrence_desert(F1, F2, p["depth"])
    for i, (g, fs, ret) in enumerate(zip(rep.gens, rep.fs, rep.returns), start=1):
        b.cert("RapidIPCert", ("set", f"F{i}"), ("depth", len(g)),
               ("gens", " ".join(map(str, g.gens))))
        b.write(f"fs{i}.txt", textio.format_set(WindowSet(int(fs[-1]) + 1, fs)))
        b.say(f"F{i}: generators {g.gens}, {len(fs)} sums, {len(ret)} positive return times")
    b.cert("DesertCert", ("returns_in_F1", str(rep.in_f1).lower()),
           ("returns_in_F2", str(rep.in_f2).lower()), ("supports_disjoint", "true"),
           ("intersection", " ".join(map(str, rep.intersection.tolist())) or "empty"))
    b.say(f"common positive return times: {rep.intersection.tolist() or 'none'}")
    if not rep.ok:
        b.status = EXIT_INVALID


def check_desert(bundle_dir, cmd):
    runs = [_runs_plain(V._bits(_load_indicator(bundle_dir, r))) for r in cmd["inputs"]["input"]]
    problems = []
    ones = [{i for s, n in r for i in range(s, s + n)} for r in runs]
    if ones[0] & ones[1]:
        problems.append("F1 and F2 overlap")
    certs = [c for c in _certs(bundle_dir) if c["kind"] == "RapidIPCert"]
    returns = []
    for i, c in enumerate(certs):
        gens = [int(v) for v in c["gens"].split()]
        problems += V.check_rapid_ip(runs[i], gens)
        fs = sorted(V.subset_sums(gens))
        returns.append({v - u for u in fs for v in fs if v > u})
    if returns[0] & returns[1]:
        problems.append("the two return-time sets intersect")
    return problems


# ---------------------------------------------------------------- independence

def parse_query(text):
    fields = dict(line.split(":", 1) for line in text.splitlines() if ":" in line)
    blocks = fields.get("blocks", "").split()
    J = [int(v) for v in fields.get("J", "").split()]
    if len(blocks) < 2:
        raise textio.FormatError("query needs a 'blocks:' line with at least two blocks")
    return blocks, J


def produce_independence(b, p, inputs):
    x = _load_indicator(b.out, inputs["word"])
    blocks, J = parse_query(_read(b.out, inputs["query"]))
    q = IndependenceQuery(x, blocks, J)
    res = check_independence(q, p["budget"])
    pairs = [("blocks", " ".join(blocks)), ("J", " ".join(map(str, q.J))),
             ("independent", str(res.independent).lower())]
    if res.independent:
        pairs.append(("witnesses", " ".join(f"{''.join(map(str, k))}:{v}"
                                            for k, v in sorted(res.witnesses.items()))))
        b.say(f"J = {q.J} is an independence set: all {q.patterns} patterns realized")
    else:
        pairs.append(("missing", " ".join(map(str, res.missing))))
        b.say(f"J = {q.J} is not an independence set; first missing pattern {res.missing}")
    b.cert("IndependenceCert", *pairs)


def check_independence_bundle(bundle_dir, cmd):
    x = _load_indicator(bundle_dir, cmd["inputs"]["word"])
    c = _certs(bundle_dir)[0]
    blocks, J = c["blocks"].split(), [int(v) for v in c["J"].split()]
    if c["independent"] == "true":
        wit = {tuple(int(ch) for ch in k): int(v) for k, v in
               (item.split(":") for item in c["witnesses"].split())}
        res = SimpleNamespace(independent=True, witnesses=wit)
    else:
        res = SimpleNamespace(independent=False,
                              missing=tuple(int(v) for v in c["missing"].split()))
    return V.check_independence(x, blocks, J, res)


def produce_probe(b, p, inputs):
    x = _load_indicator(b.out, inputs["word"])
    blocks, _ = parse_query(_read(b.out, inputs["query"]))
    rep = syndetic_independence_probe(x, blocks, p["gap"], p["size"], p["budget"])
    b.cert("ProbeCert", ("blocks", " ".join(blocks)), ("gap", p["gap"]), ("size", p["size"]),
           ("found", "none" if rep.found is None else " ".join(map(str, rep.found))),
           ("examined", rep.examined), ("candidates", rep.candidates),
           ("exhausted", str(rep.exhausted).lower()))
    if rep.found is not None:
        b.say(f"independence set with gaps <= {p['gap']}: {rep.found}")
    elif rep.exhausted:
        b.say(f"all {rep.candidates} candidates fail (finite evidence only)")
    else:
        b.say(f"budget exhausted after {rep.examined} of {rep.candidates} candidates")
        b.status = EXIT_PARTIAL


def check_probe(bundle_dir, cmd):
    from .independence import _candidates
    x = _load_indicator(bundle_dir, cmd["inputs"]["word"])
    c = _certs(bundle_dir)[0]
    blocks = c["blocks"].split()
    if c["found"] != "none":
        J = [int(v) for v in c["found"].split()]
        return [] if V.is_independent(x, blocks, J) else [f"J = {J} is not independent"]
    if c["exhausted"] == "true":
        limit = x.horizon - len(blocks[0])
        for J in _candidates(int(c["gap"]), int(c["size"]), limit):
            if V.is_independent(x, blocks, J):
                return [f"candidate {J} is independent, yet the probe reported failure"]
    return []


# ---------------------------------------------------------------- dispatch

PRODUCERS = {
    "families-check": (produce_families, check_families),
    "subshift-analyze": (produce_subshift, check_subshift),
    "construct md": (produce_md, check_md),
    "construct sm": (produce_sm, check_sm),
    "construct rapid-ip": (produce_rapid, check_rapid),
    "construct ip-extract": (produce_extract, check_extract),
    "demo fps": (lambda b, p, i: produce_demo(b, p, i, "fps"),
                 lambda d, c: check_demo(d, c, "fps")),
    "demo fs": (lambda b, p, i: produce_demo(b, p, i, "fs"),
                lambda d, c: check_demo(d, c, "fs")),
    "demo desert": (produce_desert, check_desert),
    "independence check": (produce_independence, check_independence_bundle),
    "independence probe": (produce_probe, check_probe),
}


def _stage_inputs(out: Path, inputs):
    """Copy input files into ``out/inputs`` and return bundle-relative names."""
    (out / "inputs").mkdir(parents=True, exist_ok=True)
    staged = {}
    for role, paths in inputs.items():
        if isinstance(paths, list):
            staged[role] = []
            for i, path in enumerate(paths, start=1):
                rel = f"inputs/{role}{i}.txt"
                shutil.copyfile(path, out / rel)
                staged[role].append(rel)
        else:
            rel = f"inputs/{role}.txt"
            shutil.copyfile(paths, out / rel)
            staged[role] = rel
    return staged


def produce(command, params, inputs, out, header=True, staged=False):
    """Run ``command`` into the bundle directory ``out``; returns the exit code."""
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    rel = inputs if staged else _stage_inputs(out, inputs)
    cmd = {"command": command, "params": params, "inputs": rel}
    (out / "command.json").write_text(json.dumps(cmd, indent=1, sort_keys=True) + "\n")
    b = Bundle(out)
    b.say(f"command: {command}")
    producer, checker = PRODUCERS[command]
    try:
        producer(b, params, rel)
    except (PreconditionError, BudgetExceeded) as err:
        b.cert("Inapplicable", ("reason", str(err)))
        b.say(f"inapplicable: {err}")
        b.status = EXIT_PRECONDITION
    b.write("certificates.txt", textio.format_blocks(b.certs) if b.certs else "")
    if b.status in (EXIT_OK, EXIT_PARTIAL):
        problems = checker(out, cmd)
        if problems:
            b.status = EXIT_INVALID
            for msg in problems[:20]:
                b.say(f"validation failure: {msg}")
    b.finish(header)
    return b.status


def _strip_header(text):
    return "\n".join(ln for ln in text.splitlines() if not ln.startswith("# "))


def verify(bundle_dir):
    """Recompute a bundle in a scratch directory and compare it file by file,
    then re-run the independent checks on the original.  Returns (code, problems)."""
    bundle_dir = Path(bundle_dir)
    cmd = json.loads((bundle_dir / "command.json").read_text())
    problems = []
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        shutil.copytree(bundle_dir / "inputs", tmp / "inputs")
        produce(cmd["command"], cmd["params"], cmd["inputs"], tmp, header=False, staged=True)
        names = sorted(p.name for p in bundle_dir.iterdir() if p.is_file())
        fresh = sorted(p.name for p in tmp.iterdir() if p.is_file())
        if names != fresh:
            problems.append(f"bundle files differ: {names} vs {fresh}")
        for name in set(names) & set(fresh):
            if name == "report.txt":
                same = _strip_header((bundle_dir / name).read_text()) == \
                    _strip_header((tmp / name).read_text())
            else:
                same = filecmp.cmp(bundle_dir / name, tmp / name, shallow=False)
            if not same:
                problems.append(f"{name} differs on recomputation")
    certs = _certs(bundle_dir) if (bundle_dir / "certificates.txt").read_text().strip() else []
    if not any(c["kind"] == "Inapplicable" for c in certs):
        problems += PRODUCERS[cmd["command"]][1](bundle_dir, cmd)
    return (EXIT_INVALID if problems else EXIT_OK), problems
