# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled search kernel; behaviour is identical to ``_kernel_py``."""

import time

from libcpp.vector cimport vector
from libcpp.algorithm cimport sort as cpp_sort
from libcpp.pair cimport pair

ctypedef long long i64

SAT = 1
UNSAT = 0
NODE_LIMIT = -1
TIMEOUT = -2

cdef int _CHECK_EVERY = 256


cdef inline int lit_value(const vector[int]& value, int lit) nogil:
    cdef int val = value[lit >> 1]
    if val < 0:
        return -1
    return val ^ (lit & 1)


def solve_cnf(int nvars, clauses, long long max_nodes, double timeout):
    """Decide a CNF given as a list of DIMACS-style integer clauses.

    Returns ``(status, model, decisions, propagations, conflicts)``.
    """
    cdef double deadline = time.monotonic() + timeout
    cdef int nlits = 2 * nvars
    cdef vector[int] lits
    cdef vector[int] cstart
    cdef vector[int] clen
    cdef vector[vector[int]] watches = vector[vector[int]](nlits)
    cdef vector[int] value = vector[int](nvars, -1)
    cdef vector[int] level = vector[int](nvars, 0)
    cdef vector[int] reason = vector[int](nvars, -1)
    cdef vector[int] phase = vector[int](nvars, 0)
    cdef vector[char] seen = vector[char](nvars, 0)
    cdef vector[int] trail
    cdef vector[int] trail_lim
    cdef vector[int] units
    cdef vector[int] prev = vector[int](nvars, -1)
    cdef vector[int] nxt = vector[int](nvars, -1)
    cdef vector[i64] stamp = vector[i64](nvars, 0)
    cdef vector[int] learnt
    cdef vector[int] kept
    cdef vector[int] analyzed
    cdef vector[pair[i64, int]] order
    cdef int v, last, search, i, j, k, nws, c, s, first, lk, false_lit, p, q
    cdef int confl, cur, pathc, idx, start, r, w, mi, bt, lim, asserting, pv, nv, lit, x
    cdef long long stamp_counter
    cdef long long decisions = 0
    cdef long long propagations = 0
    cdef long long conflicts = 0
    cdef size_t qhead = 0
    cdef bint found, redundant
    cdef int* ws

    for v in range(nvars):
        stamp[v] = v + 1
        prev[v] = v - 1
        nxt[v] = v + 1 if v + 1 < nvars else -1
    last = nvars - 1
    search = last
    stamp_counter = nvars

    for cl in clauses:
        if len(cl) == 0:
            return UNSAT, None, 0, 0, 0
        if len(cl) == 1:
            x = cl[0]
            units.push_back(2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1)
            continue
        c = cstart.size()
        cstart.push_back(lits.size())
        clen.push_back(len(cl))
        for x in cl:
            lits.push_back(2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1)
        s = cstart[c]
        watches[lits[s]].push_back(c)
        watches[lits[s + 1]].push_back(c)

    for i in range(units.size()):
        lit = units[i]
        r = lit_value(value, lit)
        if r == 0:
            return UNSAT, None, 0, 0, 0
        if r < 0:
            v = lit >> 1
            value[v] = 1 - (lit & 1)
            level[v] = 0
            reason[v] = -1
            trail.push_back(lit)

    while True:
        confl = -1
        while qhead < trail.size():
            p = trail[qhead]
            qhead += 1
            propagations += 1
            false_lit = p ^ 1
            nws = watches[false_lit].size()
            i = 0
            j = 0
            while i < nws:
                ws = watches[false_lit].data()
                c = ws[i]
                i += 1
                s = cstart[c]
                if lits[s] == false_lit:
                    lits[s] = lits[s + 1]
                    lits[s + 1] = false_lit
                first = lits[s]
                if lit_value(value, first) == 1:
                    ws[j] = c
                    j += 1
                    continue
                found = False
                for k in range(s + 2, s + clen[c]):
                    lk = lits[k]
                    if lit_value(value, lk) != 0:
                        lits[s + 1] = lk
                        lits[k] = false_lit
                        watches[lk].push_back(c)
                        found = True
                        break
                if found:
                    continue
                ws = watches[false_lit].data()
                ws[j] = c
                j += 1
                if lit_value(value, first) == 0:
                    confl = c
                    while i < nws:
                        ws[j] = ws[i]
                        j += 1
                        i += 1
                    break
                v = first >> 1
                value[v] = 1 - (first & 1)
                level[v] = trail_lim.size()
                reason[v] = c
                trail.push_back(first)
            watches[false_lit].resize(j)
            if confl >= 0:
                break

        if confl >= 0:
            conflicts += 1
            if trail_lim.size() == 0:
                return UNSAT, None, decisions, propagations, conflicts
            cur = trail_lim.size()
            learnt.clear()
            learnt.push_back(0)
            analyzed.clear()
            pathc = 0
            p = -1
            idx = trail.size() - 1
            c = confl
            while True:
                s = cstart[c]
                start = s if p < 0 else s + 1
                for k in range(start, s + clen[c]):
                    q = lits[k]
                    v = q >> 1
                    if not seen[v] and level[v] > 0:
                        seen[v] = 1
                        analyzed.push_back(v)
                        if level[v] >= cur:
                            pathc += 1
                        else:
                            learnt.push_back(q)
                while not seen[trail[idx] >> 1]:
                    idx -= 1
                p = trail[idx]
                idx -= 1
                pathc -= 1
                if pathc == 0:
                    break
                c = reason[p >> 1]
            learnt[0] = p ^ 1
            kept.clear()
            kept.push_back(learnt[0])
            for k in range(1, learnt.size()):
                q = learnt[k]
                r = reason[q >> 1]
                if r < 0:
                    kept.push_back(q)
                    continue
                s = cstart[r]
                redundant = True
                for i in range(s + 1, s + clen[r]):
                    w = lits[i] >> 1
                    if not seen[w] and level[w] > 0:
                        redundant = False
                        break
                if not redundant:
                    kept.push_back(q)
            learnt.swap(kept)
            bt = 0
            if learnt.size() > 1:
                mi = 1
                for k in range(2, learnt.size()):
                    if level[learnt[k] >> 1] > level[learnt[mi] >> 1]:
                        mi = k
                lk = learnt[1]
                learnt[1] = learnt[mi]
                learnt[mi] = lk
                bt = level[learnt[1] >> 1]
            order.clear()
            for k in range(analyzed.size()):
                order.push_back(pair[i64, int](stamp[analyzed[k]], analyzed[k]))
            cpp_sort(order.begin(), order.end())
            for k in range(order.size()):
                v = order[k].second
                seen[v] = 0
                if v == last:
                    continue
                pv = prev[v]
                nv = nxt[v]
                if pv >= 0:
                    nxt[pv] = nv
                if nv >= 0:
                    prev[nv] = pv
                if search == v:
                    search = pv if pv >= 0 else nv
                prev[v] = last
                nxt[v] = -1
                nxt[last] = v
                last = v
                stamp_counter += 1
                stamp[v] = stamp_counter
            if trail_lim.size() > <size_t>bt:
                lim = trail_lim[bt]
                for k in range(trail.size() - 1, lim - 1, -1):
                    v = trail[k] >> 1
                    phase[v] = value[v]
                    value[v] = -1
                    reason[v] = -1
                    if stamp[v] > stamp[search]:
                        search = v
                trail.resize(lim)
                trail_lim.resize(bt)
                qhead = lim
            for k in range(analyzed.size()):
                v = analyzed[k]
                if value[v] < 0 and stamp[v] > stamp[search]:
                    search = v
            asserting = learnt[0]
            if learnt.size() == 1:
                c = -1
            else:
                c = cstart.size()
                cstart.push_back(lits.size())
                clen.push_back(learnt.size())
                for k in range(learnt.size()):
                    lits.push_back(learnt[k])
                watches[learnt[0]].push_back(c)
                watches[learnt[1]].push_back(c)
            v = asserting >> 1
            value[v] = 1 - (asserting & 1)
            level[v] = trail_lim.size()
            reason[v] = c
            trail.push_back(asserting)
            if decisions + conflicts >= max_nodes:
                return NODE_LIMIT, None, decisions, propagations, conflicts
            if conflicts % _CHECK_EVERY == 0 and time.monotonic() > deadline:
                return TIMEOUT, None, decisions, propagations, conflicts
            continue

        while search >= 0 and value[search] >= 0:
            search = prev[search]
        if search < 0:
            return SAT, [value[k] for k in range(nvars)], decisions, propagations, conflicts
        decisions += 1
        if decisions + conflicts >= max_nodes:
            return NODE_LIMIT, None, decisions, propagations, conflicts
        v = search
        trail_lim.push_back(trail.size())
        value[v] = phase[v]
        level[v] = trail_lim.size()
        reason[v] = -1
        trail.push_back(2 * v + (1 - phase[v]))


def first_uncovered(hats, nbrs, tables):
    """First coloring (lexicographic) on which every guess is wrong, or None."""
    cdef int n = len(hats)
    cdef vector[int] h = vector[int](n)
    cdef vector[int] col = vector[int](n, 0)
    cdef vector[int] nstart = vector[int](n + 1, 0)
    cdef vector[int] nflat
    cdef vector[int] tstart = vector[int](n + 1, 0)
    cdef vector[int] tflat
    cdef int v, u, i, k, pos
    cdef bint covered
    for v in range(n):
        h[v] = hats[v]
        nstart[v] = nflat.size()
        for u in nbrs[v]:
            nflat.push_back(u)
        tstart[v] = tflat.size()
        for k in tables[v]:
            tflat.push_back(k)
    nstart[n] = nflat.size()
    tstart[n] = tflat.size()
    if n == 0:
        return ()
    while True:
        covered = False
        for v in range(n):
            k = 0
            for i in range(nstart[v], nstart[v + 1]):
                u = nflat[i]
                k = k * h[u] + col[u]
            if tflat[tstart[v] + k] == col[v]:
                covered = True
                break
        if not covered:
            return tuple([col[v] for v in range(n)])
        pos = n - 1
        while pos >= 0:
            col[pos] += 1
            if col[pos] < h[pos]:
                break
            col[pos] = 0
            pos -= 1
        if pos < 0:
            return None
