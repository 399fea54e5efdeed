# Hot kernels: substitution application, simple unification, simple matching
# and the path-ordering comparison. This file is plain Python; the build also
# compiles it with Cython into hsp._ckernel (see setup.py). Keep it free of
# constructs Cython cannot compile.

from hsp.core.terms import ABSTRACTION, ORDINARY, app, fresh_var


def apply_bindings(b, t):
    if not b or t.ground:
        return t
    if t.is_var:
        return b.get(t, t)
    if t.varset.isdisjoint(b):
        return t
    return app(t.op, *[apply_bindings(b, a) for a in t.args])


def _extend(sigma, v, t):
    single = {v: t}
    for k in list(sigma):
        sigma[k] = apply_bindings(single, sigma[k])
    sigma[v] = t


def _bind(sigma, v, t):
    if t.is_var:
        if v.kind == ABSTRACTION and t.kind == ORDINARY:
            v, t = t, v
        _extend(sigma, v, t)
        return True
    if v in t.varset:
        return False
    if v.kind == ABSTRACTION:
        # abstraction variables only take pure BG terms; ordinary variables
        # inside a BG term are weakened to fresh abstraction variables
        if t.has_fg:
            return False
        if t.has_ordinary:
            for y in t.vars:
                if y.kind == ORDINARY:
                    _extend(sigma, y, fresh_var(y.sort, ABSTRACTION))
            t = apply_bindings(sigma, t)
    _extend(sigma, v, t)
    return True


def unify(s, t, sigma=None):
    """Most general simple unifier as a dict, or None."""
    sigma = {} if sigma is None else dict(sigma)
    stack = [(s, t)]
    while stack:
        a, b = stack.pop()
        a = apply_bindings(sigma, a)
        b = apply_bindings(sigma, b)
        if a is b:
            continue
        if a.is_var:
            if not _bind(sigma, a, b):
                return None
        elif b.is_var:
            if not _bind(sigma, b, a):
                return None
        elif a.op is b.op:
            stack.extend(zip(a.args, b.args))
        else:
            return None
    return sigma


def match(pattern, target, sigma):
    """Extend sigma (in place) so that pattern·sigma is target. Simple only."""
    stack = [(pattern, target)]
    while stack:
        p, t = stack.pop()
        if p.is_var:
            bound = sigma.get(p)
            if bound is None:
                if p.sort != t.sort:
                    return False
                if p.kind == ABSTRACTION and (t.has_fg or t.has_ordinary):
                    return False
                sigma[p] = t
            elif bound is not t:
                return False
        else:
            if t.is_var or p.op is not t.op:
                return False
            if p.ground:
                if p is not t:
                    return False
                continue
            stack.extend(zip(p.args, t.args))
    return True


def lpo_gt(s, t, key, cache):
    """s > t in the lexicographic path ordering induced by key(op).

    An abstraction variable is below every non-variable FG term; any other
    variable is only below terms containing it.
    """
    if s is t or s.is_var:
        return False
    if t.is_var:
        return t in s.varset or (t.kind == ABSTRACTION and s.has_fg)
    k = (s, t)
    r = cache.get(k)
    if r is not None:
        return r
    r = _lpo_gt(s, t, key, cache)
    cache[k] = r
    return r


def _lpo_gt(s, t, key, cache):
    if t.varset and not t.varset <= s.varset:
        # some variable of t is missing from s; only abstraction variables
        # below a FG s can still be dominated
        for v in t.vars:
            if v not in s.varset and not (v.kind == ABSTRACTION and s.has_fg):
                return False
    for a in s.args:
        if a is t or lpo_gt(a, t, key, cache):
            return True
    f = s.op
    g = t.op
    if f is g:
        n = len(s.args)
        i = 0
        while i < n and s.args[i] is t.args[i]:
            i += 1
        if i == n:
            return False
        if not lpo_gt(s.args[i], t.args[i], key, cache):
            return False
        for j in range(i + 1, n):
            if not lpo_gt(s, t.args[j], key, cache):
                return False
        return True
    if key(f) > key(g):
        for b in t.args:
            if not lpo_gt(s, b, key, cache):
                return False
        return True
    return False
