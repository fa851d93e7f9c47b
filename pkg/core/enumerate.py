"""Exhaustive enumeration of single-tile tilings up to dihedral relabelling.

The search pairs the smallest free edge with every larger free edge (and
every allowed sign), keeping the successor permutation as a set of open
chains. A chain that closes into a cycle is a finished vertex, so short
vertices and impossible vertex budgets are cut as soon as they appear.
Each class is emitted once, from the member whose encoding is least in its
orbit.
"""
from __future__ import annotations

import enum
import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import TYPE_CHECKING, Callable, Dict, Iterable, Iterator, List, NamedTuple, Optional, Set, Tuple

from core.errors import FilterContradiction, OutOfScope, TooLarge
from core.feasibility import MIN_SINGLE_TILE_SIZE, single_tile_n_range
from core.model import PlanarDiagram, new_diagram, parse_surface, surface_name
from core.symmetry import CanonicalKey, canonical_form, diagram_from_key, edge_permutations
from core.trace import MIN_DEGREE, classify

if TYPE_CHECKING:
    from core.database import CheckpointStore

logger = logging.getLogger(__name__)

PROGRESS_EVERY = 1_000_000
NAIVE_MAX_N = 14
DEFAULT_NODE_LIMIT = 10 ** 9

Sink = Callable[[PlanarDiagram], None]


class Mode(str, enum.Enum):
    ORIENTABLE_ONLY = "orientable_only"
    ALL_SIGNED = "all_signed"


class Emit(str, enum.Enum):
    COUNT_ONLY = "count_only"
    STREAM_CATALOG = "stream_catalog"


@dataclass(frozen=True)
class EnumerationRequest:
    n: int
    mode: Mode = Mode.ALL_SIGNED
    chi: Optional[int] = None
    orientable: Optional[bool] = None
    surface: Optional[str] = None
    min_degree: int = MIN_DEGREE
    emit: Emit = Emit.COUNT_ONLY
    threads: int = 1
    prefix_pruning: bool = True


@dataclass
class EnumerationResult:
    counts: Dict[str, int] = field(default_factory=dict)
    nodes: int = 0

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def count(self, surface: str) -> int:
        return self.counts.get(surface, 0)


@dataclass
class CensusRow:
    surface_name: str
    counts: Dict[int, int] = field(default_factory=dict)
    # n -> raw search-space estimate for columns left out of the run
    skipped: Dict[int, int] = field(default_factory=dict)


class _Plan(NamedTuple):
    signs: Tuple[int, ...]
    v_target: Optional[int]
    need_twist: bool


# ---------------------------------------------------------------------------
# Request checks
# ---------------------------------------------------------------------------

def _resolve_filter(req: EnumerationRequest) -> Tuple[Optional[int], Optional[bool]]:
    chi, orientable = req.chi, req.orientable
    if req.surface is not None:
        s_chi, s_orientable = parse_surface(req.surface)
        if chi is not None and chi != s_chi:
            raise FilterContradiction(f"Surface {req.surface} has chi={s_chi}, not {chi}.")
        if orientable is not None and orientable != s_orientable:
            raise FilterContradiction(f"Surface {req.surface} contradicts orientable={orientable}.")
        chi, orientable = s_chi, s_orientable
    if req.mode is Mode.ORIENTABLE_ONLY:
        if orientable is False:
            raise FilterContradiction("Orientable-only mode cannot look for non-orientable tilings.")
        orientable = True
    if orientable and chi is not None and chi % 2:
        raise FilterContradiction(f"An orientable surface cannot have odd chi={chi}.")
    return chi, orientable


def _plan(req: EnumerationRequest) -> Optional[_Plan]:
    """Search parameters, or None when the filter admits nothing at this n."""
    if req.n % 2 or req.n < MIN_SINGLE_TILE_SIZE:
        raise OutOfScope(f"Enumeration needs an even n >= {MIN_SINGLE_TILE_SIZE}, got n={req.n}.")
    if req.min_degree < 1:
        raise OutOfScope(f"min_degree must be positive, got {req.min_degree}.")
    chi, orientable = _resolve_filter(req)
    v_target = None
    if chi is not None:
        v_target = chi + req.n // 2 - 1
        if v_target < 1 or v_target * req.min_degree > req.n:
            return None
    signs = (0,) if orientable else (0, 1)
    return _Plan(signs, v_target, orientable is False)


def request_key(req: EnumerationRequest, plan: _Plan) -> str:
    """Identifies a search for checkpointing; thread count and pruning are left out."""
    return (
        f"n={req.n};signs={''.join(map(str, plan.signs))};v={plan.v_target};"
        f"twist={int(plan.need_twist)};min_degree={req.min_degree}"
    )


def raw_space_estimate(n: int, mode: Mode) -> int:
    """Signed matchings of n edges: (n-1)!!, times 2^e when twists are allowed."""
    matchings = math.prod(range(n - 1, 0, -2))
    return matchings * (2 ** (n // 2) if mode is Mode.ALL_SIGNED else 1)


# ---------------------------------------------------------------------------
# Search engine
# ---------------------------------------------------------------------------

class BranchTask(NamedTuple):
    n: int
    signs: Tuple[int, ...]
    min_degree: int
    v_target: Optional[int]
    need_twist: bool
    prefix_pruning: bool
    keep_keys: bool
    partner: int
    sign: int


class BranchResult(NamedTuple):
    partner: int
    sign: int
    counts: Dict[str, int]
    nodes: int
    keys: List[CanonicalKey]


class _Search:
    """Backtracking over partial matchings with chain bookkeeping.

    States are 2*corner + (0 for +, 1 for -). Every placed pair fixes four
    successor arcs; tail_of is read at chain heads, head_of at chain tails,
    length at chain heads.
    """

    def __init__(self, task: BranchTask):
        n = task.n
        self.task = task
        self.n = n
        self.e = n // 2
        self.min_degree = task.min_degree
        self.v_target = task.v_target
        size = 2 * n
        self.tail_of = list(range(size))
        self.head_of = list(range(size))
        self.length = [1] * size
        self.open_chains = size
        self.closed_cycles = 0
        self.closed_states = 0
        self.partner = [-1] * n
        self.sign = [0] * n
        self.minus_pairs = 0
        self.undo: List[tuple] = []
        self.perms = edge_permutations(n)
        self.nodes = 0
        self.counts: Counter = Counter()
        self.keys: List[CanonicalKey] = []

    # -- chains ------------------------------------------------------------

    def _add_arc(self, x: int, y: int) -> bool:
        tx = self.tail_of[x]
        if tx == y:
            size = self.length[x]
            self.undo.append((size,))
            self.closed_cycles += 1
            self.closed_states += size
            self.open_chains -= 1
            return size >= self.min_degree
        hy = self.head_of[y]
        self.undo.append((tx, hy, self.head_of[tx], self.tail_of[hy], self.length[hy]))
        self.tail_of[hy] = tx
        self.head_of[tx] = hy
        self.length[hy] += self.length[x]
        self.open_chains -= 1
        return True

    def _rollback(self, mark: int) -> None:
        undo = self.undo
        while len(undo) > mark:
            record = undo.pop()
            self.open_chains += 1
            if len(record) == 1:
                self.closed_cycles -= 1
                self.closed_states -= record[0]
            else:
                tx, hy, head, tail, size = record
                self.head_of[tx] = head
                self.tail_of[hy] = tail
                self.length[hy] = size

    def _place(self, a: int, b: int, s: int) -> bool:
        n = self.n
        self.partner[a], self.partner[b] = b, a
        self.sign[a] = self.sign[b] = s
        self.minus_pairs += s
        a1, b1 = (a + 1) % n, (b + 1) % n
        if s == 0:
            arcs = ((2 * a, 2 * b1), (2 * b, 2 * a1), (2 * a1 + 1, 2 * b + 1), (2 * b1 + 1, 2 * a + 1))
        else:
            arcs = ((2 * a, 2 * b + 1), (2 * b, 2 * a + 1), (2 * a1 + 1, 2 * b1), (2 * b1 + 1, 2 * a1))
        ok = True
        for x, y in arcs:
            ok = self._add_arc(x, y) and ok
        return ok

    def _unplace(self, a: int, b: int, s: int, mark: int) -> None:
        self._rollback(mark)
        self.partner[a] = self.partner[b] = -1
        self.minus_pairs -= s

    # -- pruning -----------------------------------------------------------

    def _hopeless(self) -> bool:
        md = self.min_degree
        # mirror cycles close together
        vertices = self.closed_cycles // 2
        remaining = self.n - self.closed_states // 2
        if self.v_target is None:
            return 0 < remaining < md
        k = self.v_target - vertices
        if k < 0 or k * md > remaining or (remaining > 0 and k == 0):
            return True
        return 2 * k > self.open_chains

    def _dominated(self) -> bool:
        """True when some relabelling already beats the placed pairs."""
        partner, sign = self.partner, self.sign
        for fwd, inv in self.perms:
            for p in range(self.n):
                q = inv[p]
                pq, pp = partner[q], partner[p]
                if pq < 0 or pp < 0:
                    break
                image = fwd[pq]
                if image != pp:
                    if image < pp:
                        return True
                    break
                if sign[q] != sign[p]:
                    if sign[q] < sign[p]:
                        return True
                    break
        return False

    # -- search ------------------------------------------------------------

    def _leaf(self) -> None:
        if self.task.need_twist and not self.minus_pairs:
            return
        if not self.task.prefix_pruning and self._dominated():
            return
        v = self.closed_cycles // 2
        if self.v_target is not None and v != self.v_target:
            return
        chi = v - self.e + 1
        self.counts[surface_name(chi, self.minus_pairs == 0)] += 1
        if self.task.keep_keys:
            self.keys.append(tuple(x for i in range(self.n) for x in (self.partner[i], self.sign[i])))

    def _extend(self) -> None:
        self.nodes += 1
        if self.nodes % PROGRESS_EVERY == 0:
            logger.info(
                "n=%d branch 0-%d%s: %d nodes, %d found",
                self.n, self.task.partner, "+-"[self.task.sign], self.nodes, sum(self.counts.values()),
            )
        partner = self.partner
        try:
            a = partner.index(-1)
        except ValueError:
            self._leaf()
            return
        self._try_pairs(a, range(a + 1, self.n), self.task.signs)

    def _try_pairs(self, a: int, partners: Iterable[int], signs: Tuple[int, ...]) -> None:
        n = self.n
        lonely_ok = self.min_degree < 2
        for b in partners:
            if self.partner[b] >= 0:
                continue
            for s in signs:
                # an opposing pair of neighbouring edges leaves a corner alone
                if s == 0 and not lonely_ok and (b == a + 1 or (a == 0 and b == n - 1)):
                    continue
                mark = len(self.undo)
                ok = self._place(a, b, s)
                if ok and not self._hopeless() and not (self.task.prefix_pruning and self._dominated()):
                    self._extend()
                self._unplace(a, b, s, mark)

    def run(self) -> BranchResult:
        task = self.task
        self._try_pairs(0, [task.partner], (task.sign,))
        return BranchResult(task.partner, task.sign, dict(self.counts), self.nodes, self.keys)


def _run_branch(task: BranchTask) -> BranchResult:
    result = _Search(task).run()
    logger.debug(
        "n=%d branch 0-%d%s done: %d nodes, %s",
        task.n, task.partner, "+-"[task.sign], result.nodes, result.counts,
    )
    return result


def _branch_tasks(req: EnumerationRequest, plan: _Plan, keep_keys: bool) -> List[BranchTask]:
    return [
        BranchTask(req.n, plan.signs, req.min_degree, plan.v_target, plan.need_twist,
                   req.prefix_pruning, keep_keys, b, s)
        for b in range(1, req.n)
        for s in plan.signs
        if not (s == 0 and req.min_degree >= 2 and b in (1, req.n - 1))
    ]


# ---------------------------------------------------------------------------
# Public entry points
# ---------------------------------------------------------------------------

def enumerate_diagrams(
    req: EnumerationRequest,
    sink: Optional[Sink] = None,
    store: Optional["CheckpointStore"] = None,
) -> EnumerationResult:
    """Count (and optionally stream) one representative per class.

    Representatives go to ``sink`` in canonical-key order once every branch
    has finished, whatever the number of workers. With a ``store``, finished
    branches of a count-only run are saved and skipped on the next run.
    """
    plan = _plan(req)
    if plan is None:
        logger.info("n=%d: filter admits no vertex count, nothing to search", req.n)
        return EnumerationResult()
    keep_keys = sink is not None or req.emit is Emit.STREAM_CATALOG
    if keep_keys and store is not None:
        logger.info("catalog output requested; checkpoints are not used")
        store = None

    tasks = _branch_tasks(req, plan, keep_keys)
    results: List[BranchResult] = []
    key = request_key(req, plan)
    if store is not None:
        done = store.finished_branches(key)
        if done:
            logger.info("%s: reusing %d finished branches", key, len(done))
        for (b, s), (counts, nodes) in done.items():
            results.append(BranchResult(b, s, counts, nodes, []))
        tasks = [t for t in tasks if (t.partner, t.sign) not in done]

    def finished(result: BranchResult) -> None:
        results.append(result)
        if store is not None:
            store.save_branch(key, result.partner, result.sign, result.counts, result.nodes)

    if req.threads > 1 and len(tasks) > 1:
        with Pool(processes=req.threads) as pool:
            for result in pool.imap_unordered(_run_branch, tasks):
                finished(result)
    else:
        for task in tasks:
            finished(_run_branch(task))

    counts: Counter = Counter()
    nodes = 0
    for result in results:
        counts.update(result.counts)
        nodes += result.nodes
    if keep_keys:
        catalog = sorted(itertools.chain.from_iterable(r.keys for r in results))
        if sink is not None:
            for k in catalog:
                sink(diagram_from_key(req.n, k))
    return EnumerationResult(dict(sorted(counts.items())), nodes)


def signed_matchings(n: int, signs: Tuple[int, ...]) -> Iterator[List[Tuple[int, int, int]]]:
    """Every perfect matching of the n edges with every sign choice."""

    def extend(free: List[int]) -> Iterator[List[Tuple[int, int, int]]]:
        if not free:
            yield []
            return
        a, rest = free[0], free[1:]
        for idx, b in enumerate(rest):
            others = rest[:idx] + rest[idx + 1:]
            for s in signs:
                for tail in extend(others):
                    yield [(a, b, s)] + tail

    yield from extend(list(range(n)))


def enumerate_naive(req: EnumerationRequest, allow_large: bool = False) -> EnumerationResult:
    """Classify every signed matching and count distinct canonical keys."""
    if req.n > NAIVE_MAX_N and not allow_large:
        estimate = raw_space_estimate(req.n, req.mode)
        raise TooLarge(f"Naive enumeration at n={req.n} visits {estimate} diagrams.", estimate)
    plan = _plan(req)
    if plan is None:
        return EnumerationResult()
    keys: Dict[str, Set[CanonicalKey]] = {}
    visited = 0
    for pairs in signed_matchings(req.n, plan.signs):
        visited += 1
        d = new_diagram(req.n, [(a, b, "-" if s else "+") for a, b, s in pairs])
        summary = classify(d, req.min_degree)
        if summary.degree_too_small:
            continue
        if plan.v_target is not None and summary.v != plan.v_target:
            continue
        if plan.need_twist and summary.orientable:
            continue
        keys.setdefault(summary.surface_name, set()).add(canonical_form(d).key)
    return EnumerationResult({name: len(found) for name, found in sorted(keys.items())}, visited)


def census(
    surface: str,
    threads: int = 1,
    long: bool = False,
    store: Optional["CheckpointStore"] = None,
    node_limit: int = DEFAULT_NODE_LIMIT,
    n_values: Optional[List[int]] = None,
) -> CensusRow:
    """Count classes on one surface for every even n in its range.

    Columns whose raw search space exceeds ``node_limit`` need ``long``;
    without it they are listed in ``CensusRow.skipped``.
    """
    chi, orientable = parse_surface(surface)
    name = surface_name(chi, orientable)
    low, high = single_tile_n_range(chi)
    mode = Mode.ORIENTABLE_ONLY if orientable else Mode.ALL_SIGNED
    row = CensusRow(name)
    for n in n_values or range(low, high + 1, 2):
        if not low <= n <= high:
            raise OutOfScope(f"{name} has single-tile tilings only for {low} <= n <= {high}, got n={n}.")
        estimate = raw_space_estimate(n, mode)
        if estimate > node_limit and not long:
            logger.warning("%s n=%d skipped: raw space %d exceeds %d (use --long)", name, n, estimate, node_limit)
            row.skipped[n] = estimate
            continue
        if store is not None:
            cached = store.census_count(name, n)
            if cached is not None:
                logger.info("%s n=%d: stored count %d", name, n, cached)
                row.counts[n] = cached
                continue
        req = EnumerationRequest(n, mode, chi=chi, orientable=orientable, threads=threads)
        result = enumerate_diagrams(req, store=store)
        row.counts[n] = result.count(name)
        logger.info("%s n=%d: %d classes, %d nodes", name, n, row.counts[n], result.nodes)
        if store is not None:
            store.save_census_count(name, n, row.counts[n], result.nodes)
    return row

