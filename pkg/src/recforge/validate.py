"""Independent re-checks of every certificate the library emits.

Nothing here calls the detectors or kernels: words are plain strings, sets
are Python sets, and every claim is re-derived by direct loops.  A validator
returns a list of problems (empty means accepted).
"""

from fractions import Fraction
from itertools import combinations


def _bits(x):
    if isinstance(x, str):
        return x
    w = getattr(x, "word", x)
    return "".join("1" if int(b) else "0" for b in w)


def _find_all(text, pattern):
    out = []
    i = text.find(pattern)
    while i != -1:
        out.append(i)
        i = text.find(pattern, i + 1)
    return out


def _members(S):
    return set(int(v) for v in getattr(S, "elements", S))


def _window_meets(members, horizon, g):
    """Every [i, i+g) inside [0, horizon) contains a member."""
    last = -1  # most recent member seen
    for i in range(horizon):
        if i in members:
            last = i
        if i >= g - 1 and last < i - g + 1:
            return False
    return True


def check_syndetic(S, gap):
    H, mem = S.horizon, _members(S)
    problems = []
    if gap > H:
        problems.append(f"gap {gap} exceeds the window {H}")
    elif not _window_meets(mem, H, gap):
        problems.append(f"some interval of length {gap} misses the set")
    if gap > 1 and _window_meets(mem, H, gap - 1):
        problems.append(f"gap {gap} is not the least one; {gap - 1} already works")
    return problems


def check_thick(S, runs, max_run):
    mem = sorted(_members(S))
    expect = []
    for v in mem:
        if expect and expect[-1][0] + expect[-1][1] == v:
            expect[-1][1] += 1
        else:
            expect.append([v, 1])
    expect = [tuple(r) for r in expect]
    problems = []
    if [tuple(r) for r in runs] != expect:
        problems.append("run list differs from the maximal runs of the set")
    if max_run != max((n for _, n in expect), default=0):
        problems.append("max_run is wrong")
    return problems


def check_piecewise(S, gap, interval):
    a, b = interval
    if not 0 <= a < b <= S.horizon:
        return [f"interval {interval} is not inside [0, {S.horizon})"]
    if b - a < 2 * gap:
        return [f"interval {interval} is shorter than 2g = {2 * gap}"]
    mem = {v - a for v in _members(S) if a <= v < b}
    if not _window_meets(mem, b - a, gap):
        return [f"the set is not {gap}-syndetic relative to {interval}"]
    return []


def check_thickly_syndetic(S, entries):
    H, mem = S.horizon, _members(S)
    problems = []
    for n, g in entries:
        run, starts = 0, set()
        for i in range(H - 1, -1, -1):  # run = length of the member run starting at i
            run = run + 1 if i in mem else 0
            if run >= n:
                starts.add(i)
        if not _window_meets(starts, H - n + 1, g):
            problems.append(f"starts of length-{n} runs are not {g}-syndetic")
    return problems


def check_density(S, ell, banach, density):
    H, mem = S.horizon, _members(S)
    prefix = [0]
    for i in range(H):
        prefix.append(prefix[-1] + (i in mem))
    best_b = Fraction(max(prefix[i + ell] - prefix[i] for i in range(H - ell + 1)), ell)
    # largest prefix[n] / n, compared by cross-multiplication
    num, den = prefix[ell], ell
    for n in range(ell + 1, H + 1):
        if prefix[n] * den > num * n:
            num, den = prefix[n], n
    best_d = Fraction(num, den)
    problems = []
    if Fraction(banach) != best_b:
        problems.append(f"upper Banach density {banach} != {best_b}")
    if Fraction(density) != best_d:
        problems.append(f"upper density {density} != {best_d}")
    return problems


def subset_sums(gens):
    gens = [int(p) for p in gens]
    return {sum(c) for k in range(1, len(gens) + 1) for c in combinations(gens, k)}


def check_extract_ip(x, gens):
    s = _bits(x)
    problems = []
    for n in range(1, len(gens) + 1):
        head = s[:n]
        for m in subset_sums(gens[n - 1:]):
            if not s.startswith(head, m):
                problems.append(f"FS element {m} of p_{n}.. does not return to [x[0:{n}]]")
    return problems


def check_hindman(gens, coloring, qs):
    """q's must be sums over disjoint blocks of gens with FS(q) monochromatic."""
    gens = [int(p) for p in gens]
    rep = {}
    for k in range(1, len(gens) + 1):
        for c in combinations(range(len(gens)), k):
            rep.setdefault(sum(gens[i] for i in c), set(c))
    problems = []
    used = set()
    for q in qs:
        if q not in rep:
            problems.append(f"{q} is not a finite sum of the generators")
            continue
        if used & rep[q]:
            problems.append(f"{q} reuses a generator")
        used |= rep[q]
    color = coloring if callable(coloring) else coloring.__getitem__
    if not problems and len({color(v) for v in subset_sums(qs)}) != 1:
        problems.append("FS of the q's is not monochromatic")
    return problems


def _in_runs(runs, v):
    return any(s <= v < s + n for s, n in runs)


def check_rapid_ip(runs, gens):
    gens = [int(p) for p in gens]
    problems = []
    total = 0
    for p in gens:
        if p <= total:
            problems.append("generators are not superincreasing")
        total += p
    fs = sorted(subset_sums(gens))
    for v in fs:
        if not _in_runs(runs, v):
            problems.append(f"FS element {v} outside F")
    for i, u in enumerate(fs):
        for v in fs[i + 1:]:
            if not _in_runs(runs, v - u):
                problems.append(f"difference {v - u} outside F")
    return problems


def replay_md(trace):
    """Rebuild the stage words from a's alone."""
    a1 = trace.stages[0].a
    words = ["1" + "0" * a1 + "1"]
    for st in trace.stages[1:]:
        cur = words[-1]
        m = len(cur)
        tail = cur + "".join(w * (m // len(w)) for w in reversed(words[:-1]))
        words.append(cur + "0" * st.a + tail)
    return words


def check_md(C, y, trace):
    c, s = _bits(C), _bits(y)
    words = replay_md(trace)
    problems = []
    for k, (w, st) in enumerate(zip(words, trace.stages), start=1):
        if _bits(st.word) != w:
            problems.append(f"A_{k} does not match its replay")
        if k > 1:
            prev = trace.stages[k - 2]
            if not (st.a > prev.a and st.a % len(words[k - 2]) == 0):
                problems.append(f"a_{k} is not a larger multiple of m_{k - 1}")
            if any(len(w) % len(v) for v in words[:k]):
                problems.append(f"m_{k} is not divisible by every earlier m_j")
        if not s.startswith(w):
            problems.append(f"A_{k} is not a prefix of y")
    if s != words[-1]:
        problems.append("y is not the deepest stage word")
    for i, ch in enumerate(s):
        if ch == "1" and (i >= len(c) or c[i] != "1"):
            problems.append(f"y has a 1 at {i}, outside C")
            break
    return problems


def replay_sm(trace):
    """Rebuild y from the recorded placements and rewritten regions."""
    y = ["0"] * trace.horizon
    first = trace.stages[0]
    a1 = len(first.A)
    y[:a1] = _bits(first.A)
    blocks = {}
    for st in trace.stages:
        A = "".join(y[:len(st.A)])
        blocks[st.m] = A + A + "0" + A
        for start, end in st.regions:
            y[start:end] = "0" * (end - start)
        for pos, level in st.placements:
            B = blocks[level]
            y[pos:pos + len(B)] = B
    return "".join(y[:trace.length])


def _max_gap(positions, hocc):
    if not positions:
        return None
    gaps = [positions[0] + 1, hocc - positions[-1]]
    gaps += [b - a for a, b in zip(positions, positions[1:])]
    return max(gaps)


def check_sm(F, y, trace):
    f, s = _bits(F), _bits(y)
    problems = []
    if replay_sm(trace) != s:
        problems.append("replaying the placements does not reproduce y")
    for i, ch in enumerate(s):
        if ch == "1" and (i >= len(f) or f[i] != "1"):
            problems.append(f"y has a 1 at {i}, outside F")
            break
    for st in trace.stages:
        A = _bits(st.A)
        B = A + A + "0" + A
        if _bits(st.B) != B:
            problems.append(f"B_{st.m} != A_{st.m} A_{st.m} 0 A_{st.m}")
        u1 = int(st.u.elements[0])
        if s[u1:u1 + len(B)] != B:
            problems.append(f"B_{st.m} missing at its first placement {u1}")
        occ = _find_all(s, A)
        g = _max_gap(occ, len(s) - len(A) + 1)
        if g is None or g > st.l:
            problems.append(f"A_{st.m} has gap {g} > l_{st.m} = {st.l}")
        pos = set(occ)
        a = len(A)
        if not any(i + a in pos for i in occ) or not any(i + a + 1 in pos for i in occ):
            problems.append(f"a_{st.m} or a_{st.m} + 1 is not a return time of A_{st.m}")
    return problems


def block_count(y, k):
    s = _bits(y)
    return len({s[i:i + k] for i in range(len(s) - k + 1)})


def check_entropy(y, rows):
    problems = []
    for row in rows:
        n = block_count(y, row.m)
        if n != row.blocks:
            problems.append(f"B_{row.m} recount {n} != {row.blocks}")
        if n > (row.m + 1) ** 3:
            problems.append(f"B_{row.m} = {n} exceeds (m+1)^3")
    return problems


def occurrence_set(x, A):
    return set(_find_all(_bits(x), _bits(A)))


def check_joint(x, A, y, B, joint):
    hx = len(_bits(x)) - len(_bits(A)) + 1
    hy = len(_bits(y)) - len(_bits(B)) + 1
    h = min(hx, hy)
    expect = {n for n in occurrence_set(x, A) & occurrence_set(y, B) if n < h}
    return [] if expect == _members(joint) else ["joint return set differs from brute force"]


def check_independence(x, blocks, J, result):
    s = _bits(x)
    blocks = [_bits(b) for b in blocks]
    k = len(blocks[0])
    J = sorted(J)
    problems = []

    def realized_at(i, pattern):
        return all(s[i + j:i + j + k] == blocks[t] for j, t in zip(J, pattern))

    if result.independent:
        for pattern, i in result.witnesses.items():
            if not realized_at(i, pattern):
                problems.append(f"witness {i} does not realize {pattern}")
        if len(result.witnesses) != len(blocks) ** len(J):
            problems.append("not every pattern has a witness")
    else:
        last = len(s) - k - J[-1]
        if any(realized_at(i, result.missing) for i in range(last + 1)):
            problems.append(f"pattern {result.missing} is realized after all")
    return problems


def check_positive_returns(elements, returns):
    e = sorted(_members(elements))
    expect = {b - a for a, b in combinations(e, 2)}
    return [] if expect == _members(returns) else ["positive return times differ from brute force"]


def check_syndetic_absent(S, limit):
    """No gap up to ``limit`` works."""
    if _window_meets(_members(S), S.horizon, limit):
        return [f"the set is {limit}-syndetic, yet no gap was reported"]
    return []


def check_recurrence(x, returns):
    s = _bits(x)
    problems = []
    for k, t in returns.items():
        head = s[:k]
        first = next((n for n in range(1, len(s) - k + 1) if s.startswith(head, n)), None)
        if first != t:
            problems.append(f"first return of [x[0:{k}]] is {first}, not {t}")
    return problems


def check_minimality(x, depth, gaps):
    s = _bits(x)
    problems = []
    seen = set()
    for k in range(1, depth + 1):
        for u in {s[i:i + k] for i in range(len(s) - k + 1)}:
            seen.add(u)
            g = _max_gap(_find_all(s, u), len(s) - k + 1)
            if gaps.get(u) != g:
                problems.append(f"gap of {u} is {g}, not {gaps.get(u)}")
    if set(gaps) != seen:
        problems.append("certificate lists blocks that do not occur")
    return problems


def check_weak_mixing(x, k, witnesses):
    s = _bits(x)
    problems = []
    blocks = {s[i:i + k] for i in range(len(s) - k + 1)}
    if set(witnesses) != blocks:
        problems.append("witness table does not cover exactly the occurring blocks")
    for u in blocks:
        # bit i of mask is set when u occurs at i; t is a return time iff mask & (mask >> t)
        mask = sum(1 << i for i in _find_all(s, u))
        best = None
        prev = False
        for t in range(len(s) - k + 1):
            hit = bool(mask & (mask >> t))
            if prev and hit:
                best = t - 1
                break
            prev = hit
        if witnesses.get(u) != best:
            problems.append(f"weak-mixing witness of {u} is {best}, not {witnesses.get(u)}")
    return problems


def is_independent(x, blocks, J):
    """Every pattern over J realized somewhere in x (direct scan)."""
    s = _bits(x)
    blocks = [_bits(b) for b in blocks]
    k = len(blocks[0])
    J = sorted(J)
    seen = set()
    for i in range(len(s) - k - J[-1] + 1):
        pattern = []
        for j in J:
            u = s[i + j:i + j + k]
            if u not in blocks:
                break
            pattern.append(blocks.index(u))
        else:
            seen.add(tuple(pattern))
    return len(seen) == len(blocks) ** len(J)
