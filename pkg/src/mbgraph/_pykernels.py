"""Pure-Python reachability kernels.

Same contract as the compiled ``_ckernels`` extension; used when the
extension is not built.  All arguments are in id space: ``succ``/``pred`` are
adjacency tuples, ``cond`` a length-n byte mask of the conditioning set.
"""


def ancestor_mask(pred, cond):
    """Byte mask of the conditioning set together with its ancestors."""
    anc = bytearray(cond)
    stack = [i for i, c in enumerate(cond) if c]
    while stack:
        u = stack.pop()
        for p in pred[u]:
            if not anc[p]:
                anc[p] = 1
                stack.append(p)
    return anc


def reach(succ, pred, directed, sources, cond, target=-1):
    """Vertices outside ``cond`` joined to ``sources`` by an active trail.

    Sources that lie in ``cond`` are observed and start nothing.  When
    ``target`` is a vertex id the search stops as soon as it is reached and
    the returned mask is partial.
    """
    n = len(succ)
    out = bytearray(n)
    if not directed:
        stack = []
        for s in sources:
            if not cond[s] and not out[s]:
                out[s] = 1
                stack.append(s)
        while stack:
            u = stack.pop()
            if u == target:
                return out
            for v in succ[u]:
                if not out[v] and not cond[v]:
                    out[v] = 1
                    stack.append(v)
        return out

    anc = ancestor_mask(pred, cond)
    # up[v]: v entered from a child (or is a source); down[v]: entered from a parent
    up = bytearray(n)
    down = bytearray(n)
    stack = []
    for s in sources:
        if not cond[s] and not up[s]:
            up[s] = 1
            stack.append(s)
    while stack:
        x = stack.pop()
        if x >= 0:
            v = x
            if cond[v]:
                continue
            out[v] = 1
            if v == target:
                return out
            for p in pred[v]:
                if not up[p]:
                    up[p] = 1
                    stack.append(p)
            for c in succ[v]:
                if not down[c]:
                    down[c] = 1
                    stack.append(~c)
        else:
            v = ~x
            if not cond[v]:
                out[v] = 1
                if v == target:
                    return out
                for c in succ[v]:
                    if not down[c]:
                        down[c] = 1
                        stack.append(~c)
            if anc[v]:
                for p in pred[v]:
                    if not up[p]:
                        up[p] = 1
                        stack.append(p)
    return out


def blanket_flags(succ, pred, directed, sources, candidates, cond):
    """Membership flags of the set-restricted blanket, one per candidate.

    ``cond`` must mark the evidence plus every candidate.  Candidate ``v`` is
    a member iff it is reachable from ``sources`` once ``v`` alone is dropped
    from ``cond``; candidates that are evidence stay observed and never join.
    """
    cond = bytearray(cond)
    flags = bytearray(len(candidates))
    for k, v in enumerate(candidates):
        cond[v] = 0
        flags[k] = reach(succ, pred, directed, sources, cond, target=v)[v]
        cond[v] = 1
    return flags
