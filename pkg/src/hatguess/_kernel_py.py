"""Pure-Python search kernel.

Mirrors ``_kernel.pyx`` operation for operation so that both backends return
identical models and statistics on identical input.
"""

import itertools
import time

SAT = 1
UNSAT = 0
NODE_LIMIT = -1
TIMEOUT = -2

_CHECK_EVERY = 256


def solve_cnf(nvars, clauses, max_nodes, timeout):
    """Decide a CNF given as a list of DIMACS-style integer clauses.

    Returns ``(status, model, decisions, propagations, conflicts)`` where
    ``model`` is a list of 0/1 values indexed by ``var - 1`` when SAT.
    """
    deadline = time.monotonic() + timeout
    nlits = 2 * nvars
    lits = []
    cstart = []
    clen = []
    watches = [[] for _ in range(nlits)]
    value = [-1] * nvars
    level = [0] * nvars
    reason = [-1] * nvars
    phase = [0] * nvars
    seen = [0] * nvars
    trail = []
    trail_lim = []
    units = []

    # VMTF queue: prev/next links ordered by stamp; ``search`` walks towards
    # older entries.
    prev = [-1] * nvars
    nxt = [-1] * nvars
    stamp = [0] * nvars
    for v in range(nvars):
        stamp[v] = v + 1
        prev[v] = v - 1
        nxt[v] = v + 1 if v + 1 < nvars else -1
    last = nvars - 1
    search = last
    stamp_counter = nvars

    decisions = 0
    propagations = 0
    conflicts = 0

    for cl in clauses:
        enc = []
        for x in cl:
            enc.append(2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1)
        if not enc:
            return UNSAT, None, 0, 0, 0
        if len(enc) == 1:
            units.append(enc[0])
            continue
        c = len(cstart)
        cstart.append(len(lits))
        clen.append(len(enc))
        lits.extend(enc)
        watches[enc[0]].append(c)
        watches[enc[1]].append(c)

    def lit_value(lit):
        val = value[lit >> 1]
        if val < 0:
            return -1
        return val ^ (lit & 1)

    for lit in units:
        lv = lit_value(lit)
        if lv == 0:
            return UNSAT, None, 0, 0, 0
        if lv < 0:
            v = lit >> 1
            value[v] = 1 - (lit & 1)
            level[v] = 0
            reason[v] = -1
            trail.append(lit)

    qhead = 0
    while True:
        # -- propagate --------------------------------------------------
        confl = -1
        while qhead < len(trail):
            p = trail[qhead]
            qhead += 1
            propagations += 1
            false_lit = p ^ 1
            ws = watches[false_lit]
            i = 0
            j = 0
            nws = len(ws)
            while i < nws:
                c = ws[i]
                i += 1
                s = cstart[c]
                if lits[s] == false_lit:
                    lits[s] = lits[s + 1]
                    lits[s + 1] = false_lit
                first = lits[s]
                if lit_value(first) == 1:
                    ws[j] = c
                    j += 1
                    continue
                found = False
                for k in range(s + 2, s + clen[c]):
                    lk = lits[k]
                    if lit_value(lk) != 0:
                        lits[s + 1] = lk
                        lits[k] = false_lit
                        watches[lk].append(c)
                        found = True
                        break
                if found:
                    continue
                ws[j] = c
                j += 1
                if lit_value(first) == 0:
                    confl = c
                    while i < nws:
                        ws[j] = ws[i]
                        j += 1
                        i += 1
                    break
                v = first >> 1
                value[v] = 1 - (first & 1)
                level[v] = len(trail_lim)
                reason[v] = c
                trail.append(first)
            del ws[j:]
            if confl >= 0:
                break

        if confl >= 0:
            conflicts += 1
            if not trail_lim:
                return UNSAT, None, decisions, propagations, conflicts
            # -- analyze (first UIP) -----------------------------------
            cur = len(trail_lim)
            learnt = [0]
            analyzed = []
            pathc = 0
            p = -1
            idx = len(trail) - 1
            c = confl
            while True:
                s = cstart[c]
                start = s if p < 0 else s + 1
                for k in range(start, s + clen[c]):
                    q = lits[k]
                    v = q >> 1
                    if not seen[v] and level[v] > 0:
                        seen[v] = 1
                        analyzed.append(v)
                        if level[v] >= cur:
                            pathc += 1
                        else:
                            learnt.append(q)
                while not seen[trail[idx] >> 1]:
                    idx -= 1
                p = trail[idx]
                idx -= 1
                pathc -= 1
                if pathc == 0:
                    break
                c = reason[p >> 1]
            learnt[0] = p ^ 1
            # local minimization: drop literals implied by other members
            kept = [learnt[0]]
            for q in learnt[1:]:
                r = reason[q >> 1]
                if r < 0:
                    kept.append(q)
                    continue
                s = cstart[r]
                redundant = True
                for k in range(s + 1, s + clen[r]):
                    w = lits[k] >> 1
                    if not seen[w] and level[w] > 0:
                        redundant = False
                        break
                if not redundant:
                    kept.append(q)
            learnt = kept
            # backjump level: move the highest-level other literal to slot 1
            bt = 0
            if len(learnt) > 1:
                mi = 1
                for k in range(2, len(learnt)):
                    if level[learnt[k] >> 1] > level[learnt[mi] >> 1]:
                        mi = k
                learnt[1], learnt[mi] = learnt[mi], learnt[1]
                bt = level[learnt[1] >> 1]
            # VMTF bump: analyzed variables moved to front in stamp order
            analyzed.sort(key=stamp.__getitem__)
            for v in analyzed:
                seen[v] = 0
                if v == last:
                    continue
                # unlink
                pv = prev[v]
                nv = nxt[v]
                if pv >= 0:
                    nxt[pv] = nv
                if nv >= 0:
                    prev[nv] = pv
                if search == v:
                    search = pv if pv >= 0 else nv
                # link at front
                prev[v] = last
                nxt[v] = -1
                nxt[last] = v
                last = v
                stamp_counter += 1
                stamp[v] = stamp_counter
            # backtrack
            if len(trail_lim) > bt:
                lim = trail_lim[bt]
                for k in range(len(trail) - 1, lim - 1, -1):
                    v = trail[k] >> 1
                    phase[v] = value[v]
                    value[v] = -1
                    reason[v] = -1
                    if stamp[v] > stamp[search]:
                        search = v
                del trail[lim:]
                del trail_lim[bt:]
                qhead = lim
            for v in analyzed:
                if value[v] < 0 and stamp[v] > stamp[search]:
                    search = v
            # record learned clause
            asserting = learnt[0]
            if len(learnt) == 1:
                c = -1
            else:
                c = len(cstart)
                cstart.append(len(lits))
                clen.append(len(learnt))
                lits.extend(learnt)
                watches[learnt[0]].append(c)
                watches[learnt[1]].append(c)
            v = asserting >> 1
            value[v] = 1 - (asserting & 1)
            level[v] = len(trail_lim)
            reason[v] = c
            trail.append(asserting)
            if decisions + conflicts >= max_nodes:
                return NODE_LIMIT, None, decisions, propagations, conflicts
            if conflicts % _CHECK_EVERY == 0 and time.monotonic() > deadline:
                return TIMEOUT, None, decisions, propagations, conflicts
            continue

        # -- decide -----------------------------------------------------
        while search >= 0 and value[search] >= 0:
            search = prev[search]
        if search < 0:
            return SAT, list(value), decisions, propagations, conflicts
        decisions += 1
        if decisions + conflicts >= max_nodes:
            return NODE_LIMIT, None, decisions, propagations, conflicts
        v = search
        trail_lim.append(len(trail))
        value[v] = phase[v]
        level[v] = len(trail_lim)
        reason[v] = -1
        trail.append(2 * v + (1 - phase[v]))


def first_uncovered(hats, nbrs, tables):
    """First coloring (lexicographic) on which every guess is wrong, or None.

    ``nbrs[v]`` lists neighbor positions in vertex order and ``tables[v]`` is
    the guess table of player ``v`` indexed by view.
    """
    n = len(hats)
    order = range(n)
    for col in itertools.product(*(range(h) for h in hats)):
        for v in order:
            k = 0
            for u in nbrs[v]:
                k = k * hats[u] + col[u]
            if tables[v][k] == col[v]:
                break
        else:
            return col
    return None
