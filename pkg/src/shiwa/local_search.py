"""Derivative-free local search: Powell's method and a Cobyla-style
linear-model trust-region method, both expressed through ask/tell.

Each algorithm is written as a coroutine that yields the next point to
evaluate and receives its objective value; the `SequentialSearch` adapter
turns that into the ask/tell protocol.  Both methods are strictly
sequential (one outstanding ask) and never terminate on their own: a
converged state triggers an internal restart so that the surrounding budget
logic stays in charge of stopping.
"""

from __future__ import annotations

import numpy as np

from .core import Candidate, Domain, DomainMismatch, Optimizer

__all__ = ["Powell", "CobylaLike", "make_powell", "make_cobyla_like"]

_GOLD = (1 + np.sqrt(5)) / 2
_INVPHI = 1 / _GOLD


class SequentialSearch(Optimizer):
    """Adapter driving a point-yielding coroutine through ask/tell.

    Unasked tells (warm-start archive dumps from a chain) are archived but
    never fed to the coroutine, which only ever sees its own probes.
    """

    max_outstanding = 1

    def __init__(self, domain, *, budget=None, seed=None, start_point=None):
        if not domain.is_metrizable():
            raise DomainMismatch(f"{type(self).__name__} works on continuous domains")
        super().__init__(domain, budget=budget, seed=seed)
        if start_point is None:
            self.start_point = np.zeros(self.dimension)
        else:
            self.start_point = np.asarray(start_point, dtype=float).copy()
        self._engine = self._run()
        self._engine_started = False
        self._last_value: float | None = None

    def _run(self):
        raise NotImplementedError

    def _ask(self) -> Candidate:
        if not self._engine_started:
            self._engine_started = True
            point = next(self._engine)
        else:
            point = self._engine.send(self._last_value)
        return self._candidate(np.array(point, dtype=float))

    def _tell(self, candidate, value, asked):
        if asked:
            self._last_value = value


class Powell(SequentialSearch):
    """Powell's conjugate-direction method.

    Directions start as the identity basis.  After each sweep of line
    searches the standard extrapolation test decides whether the sweep
    displacement replaces the direction of largest decrease.  Line searches
    bracket with golden-ratio expansion and refine with Brent's method
    (golden-section safeguard plus parabolic steps; pure golden section
    costs ~60 evaluations per search, which starves the sweep count),
    relative tolerance 1e-10.  A converged sweep resets the direction set
    to the identity and continues from the current point; a degenerate
    direction set (condition number beyond 1e8, checked every d sweeps)
    does the same.  The identity reset is deliberate: a basis fitted to
    earlier samples rotates away the axis alignment that makes separable
    ill-conditioned problems fall to single sweeps.
    """

    LINE_TOL = 1e-10
    MAX_BRACKET = 1e8
    COND_LIMIT = 1e8
    _CGOLD = 0.3819660112501051  # 2 - golden ratio
    _MAX_REFINE = 60

    def _line_search(self, x, fx, u):
        # returns (new_x, new_f); never increases f
        ta, fa = 0.0, fx
        tb = 1.0
        fb = yield x + tb * u
        best_t, best_f = (tb, fb) if fb < fa else (ta, fa)
        if fb > fa:
            # the unit step went uphill; before expanding past the origin,
            # probe inside (0, 1) in case the step simply overshot a minimum
            inner = self._CGOLD
            f_inner = yield x + inner * u
            if f_inner < best_f:
                best_t, best_f = inner, f_inner
            if f_inner < fa:
                ta, fa, tb, fb = 0.0, fx, inner, f_inner
            else:
                ta, fa, tb, fb = tb, fb, ta, fa
        tc = tb + _GOLD * (tb - ta)
        fc = yield x + tc * u
        while fc < fb and abs(tc) < self.MAX_BRACKET:
            ta, fa = tb, fb
            tb, fb = tc, fc
            tc = tb + _GOLD * (tb - ta)
            fc = yield x + tc * u
        if fb < best_f:
            best_t, best_f = tb, fb
        if fc < best_f:
            best_t, best_f = tc, fc

        a, b = (ta, tc) if ta <= tc else (tc, ta)
        t = w = v = tb
        ft = fw = fv = fb
        step = e = 0.0
        for _ in range(self._MAX_REFINE):
            m = 0.5 * (a + b)
            tol1 = self.LINE_TOL * abs(t) + 1e-12
            tol2 = 2.0 * tol1
            if abs(t - m) <= tol2 - 0.5 * (b - a):
                break
            use_golden = True
            if abs(e) > tol1:
                # trial parabola through (t, w, v)
                r = (t - w) * (ft - fv)
                q = (t - v) * (ft - fw)
                p = (t - v) * q - (t - w) * r
                q = 2.0 * (q - r)
                if q > 0.0:
                    p = -p
                q = abs(q)
                e_prev, e = e, step
                if abs(p) < abs(0.5 * q * e_prev) and q * (a - t) < p < q * (b - t):
                    step = p / q
                    if (t + step) - a < tol2 or b - (t + step) < tol2:
                        step = tol1 if m >= t else -tol1
                    use_golden = False
            if use_golden:
                e = (a if t >= m else b) - t
                step = self._CGOLD * e
            trial = t + step if abs(step) >= tol1 else t + (tol1 if step > 0 else -tol1)
            f_trial = yield x + trial * u
            if f_trial < best_f:
                best_t, best_f = trial, f_trial
            if f_trial <= ft:
                if trial >= t:
                    a = t
                else:
                    b = t
                v, fv, w, fw = w, fw, t, ft
                t, ft = trial, f_trial
            else:
                if trial < t:
                    a = trial
                else:
                    b = trial
                if f_trial <= fw or w == t:
                    v, fv, w, fw = w, fw, trial, f_trial
                elif f_trial <= fv or v == t or v == w:
                    v, fv = trial, f_trial
        if best_f < fx:
            return x + best_t * u, best_f
        return x, fx

    def _run(self):
        d = self.dimension
        x = self.start_point.copy()
        fx = yield x.copy()
        while True:  # each pass restarts with fresh directions
            directions = np.eye(d)
            sweeps = 0
            while True:
                x_start, f_start = x.copy(), fx
                biggest_drop = 0.0
                drop_index = 0
                for i in range(d):
                    f_before = fx
                    x, fx = yield from self._line_search(x, fx, directions[i])
                    if f_before - fx > biggest_drop:
                        biggest_drop = f_before - fx
                        drop_index = i
                sweeps += 1
                if 2 * (f_start - fx) <= 1e-12 * (abs(f_start) + abs(fx)) + 1e-25:
                    break  # converged; restart with identity directions
                extrapolated = 2 * x - x_start
                f_extra = yield extrapolated
                if f_extra < f_start:
                    t = (2 * (f_start - 2 * fx + f_extra)
                         * (f_start - fx - biggest_drop) ** 2
                         - biggest_drop * (f_start - f_extra) ** 2)
                    if t < 0:
                        # keep the raw sweep displacement: its magnitude is
                        # the natural bracket scale for the new direction
                        new_dir = x - x_start
                        if np.linalg.norm(new_dir) > 0:
                            directions[drop_index] = directions[d - 1]
                            directions[d - 1] = new_dir
                            x, fx = yield from self._line_search(x, fx, directions[d - 1])
                if sweeps % d == 0 and np.linalg.cond(directions) > self.COND_LIMIT:
                    break  # degenerate span; restart with identity directions


class CobylaLike(SequentialSearch):
    """Trust-region search with linear interpolation models.

    A simplex of d+1 points around the incumbent defines a linear model by
    interpolation; each iteration steps from the best vertex to the trust
    boundary along the model's descent direction.  The classic ratio rules
    apply: actual/predicted decrease above 0.7 doubles the radius, below
    0.3 halves it.  A degenerate or stale simplex (ill-conditioned edge
    matrix, or edges far out of scale with the radius) is rebuilt around
    the best vertex at the current radius.  The staleness triggers are
    deliberately tight: accepted trial vertices drift toward collinearity,
    and a lax condition bound lets the model go bad long before rebuilding.
    """

    EXPAND_RATIO = 0.7
    SHRINK_RATIO = 0.3
    COND_LIMIT = 1e4
    EDGE_SCALE = 10.0
    MIN_RADIUS = 1e-12

    def __init__(self, domain, *, budget=None, seed=None, start_point=None,
                 initial_radius=1.0):
        super().__init__(domain, budget=budget, seed=seed, start_point=start_point)
        self.radius = initial_radius
        self.initial_radius = initial_radius
        self.num_expansions = 0

    def _run(self):
        d = self.dimension
        x0 = self.start_point.copy()
        f0 = yield x0.copy()
        points, values = yield from self._build_simplex(x0, f0)
        while True:
            best = int(np.argmin(values))
            base, f_base = points[best], values[best]
            edges = np.array([points[i] - base for i in range(d + 1) if i != best])
            rhs = np.array([values[i] - f_base for i in range(d + 1) if i != best])
            stale = (np.linalg.cond(edges) > self.COND_LIMIT
                     or np.max(np.linalg.norm(edges, axis=1)) > self.EDGE_SCALE * self.radius)
            if stale:
                points, values = yield from self._build_simplex(base, f_base)
                continue
            gradient, *_ = np.linalg.lstsq(edges, rhs, rcond=None)
            gnorm = float(np.linalg.norm(gradient))
            if not np.isfinite(gnorm) or gnorm < 1e-15:
                self.radius = max(self.radius * 0.5, self.MIN_RADIUS)
                points, values = yield from self._build_simplex(base, f_base)
                continue
            trial = base - self.radius * gradient / gnorm
            f_trial = yield trial
            predicted = self.radius * gnorm
            ratio = (f_base - f_trial) / predicted
            if ratio > self.EXPAND_RATIO:
                self.radius *= 2
                self.num_expansions += 1
            elif ratio < self.SHRINK_RATIO:
                self.radius = max(self.radius * 0.5, self.MIN_RADIUS)
            worst = int(np.argmax(values))
            if f_trial < values[worst]:
                points[worst] = trial
                values[worst] = f_trial

    def _build_simplex(self, center, f_center):
        d = self.dimension
        points = [center.copy()]
        values = [f_center]
        for i in range(d):
            offset = center.copy()
            offset[i] += self.radius
            values.append((yield offset))
            points.append(offset)
        return points, values


def make_powell(d: int, seed=None, start_point=None, *, budget=None) -> Powell:
    """Powell conjugate-direction search; first ask equals the start point."""
    return Powell(Domain.continuous(d), budget=budget, seed=seed, start_point=start_point)


def make_cobyla_like(d: int, seed=None, start_point=None, *, budget=None) -> CobylaLike:
    """Linear-model trust-region search; first ask equals the start point."""
    return CobylaLike(Domain.continuous(d), budget=budget, seed=seed, start_point=start_point)
