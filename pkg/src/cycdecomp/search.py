"""Balanced pairwise-product decompositions: verification and search.

A decomposition instance is a k-tuple of integers together with a partition
of all C(k,2) index pairs into m blocks whose product sums agree.  The
search enumerates nondecreasing tuples over a value range and backtracks
over pair assignments; verification paths also accept signed tuples coming
from the cyclotomic generator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, permutations

from .squares import is_prime, perfect_cube_test


class NodeBudgetExceeded(RuntimeError):
    """Raised when the search exhausts its backtracking-node budget."""

    def __init__(self, budget: int):
        super().__init__(f"node budget of {budget} exhausted")
        self.budget = budget


# ---------------------------------------------------------------------------
# instances


@dataclass(frozen=True)
class DecompInstance:
    """A tuple plus an equal-sum partition of its pairwise products."""

    values: tuple[int, ...]
    m: int
    blocks: tuple[tuple[tuple[int, int], ...], ...]
    block_sum: int
    sum_squares: int
    gap: int
    tags: tuple[str, ...]
    provenance: str

    @property
    def key(self) -> str:
        """Canonical dedup key: sorted absolute values, m, re-indexed blocks."""
        order = sorted(range(len(self.values)), key=lambda i: (abs(self.values[i]), i))
        pos = {old: new for new, old in enumerate(order)}
        vals = ",".join(str(abs(self.values[i])) for i in order)
        blocks = []
        for blk in self.blocks:
            pairs = sorted(tuple(sorted((pos[i], pos[j]))) for i, j in blk)
            blocks.append(",".join(f"{i}-{j}" for i, j in pairs))
        blocks.sort()
        return f"{vals}|{self.m}|{';'.join(blocks)}"

    def to_json_dict(self) -> dict:
        return {
            "tuple": list(self.values),
            "m": self.m,
            "blocks": [[list(p) for p in blk] for blk in self.blocks],
            "block_sum": self.block_sum,
            "sum_squares": self.sum_squares,
            "gap": self.gap,
            "tags": list(self.tags),
            "provenance": self.provenance,
            "key": self.key,
        }

    def to_json_line(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))


def instance_from_json_dict(obj: dict) -> DecompInstance:
    inst = make_instance(
        [int(v) for v in obj["tuple"]],
        [[tuple(p) for p in blk] for blk in obj["blocks"]],
        provenance=str(obj["provenance"]),
    )
    for name in ("m", "block_sum", "sum_squares", "gap", "key"):
        stored = obj[name]
        actual = getattr(inst, name) if name != "key" else inst.key
        if (list(actual) if isinstance(actual, tuple) else actual) != stored:
            raise ValueError(f"inconsistent instance field {name}: {stored!r}")
    return inst


def make_instance(values, blocks, provenance: str = "search") -> DecompInstance:
    """Validate and canonicalize a (tuple, blocks) pair into an instance."""
    vals = tuple(int(v) for v in values)
    k = len(vals)
    all_pairs = set(combinations(range(k), 2))
    canon_blocks = []
    seen: set[tuple[int, int]] = set()
    sums = []
    for blk in blocks:
        pairs = sorted(tuple(sorted((int(i), int(j)))) for i, j in blk)
        if not pairs:
            raise ValueError("empty block")
        for p in pairs:
            if p not in all_pairs:
                raise ValueError(f"pair {p} out of range or repeated")
            if p in seen:
                raise ValueError(f"pair {p} assigned twice")
            seen.add(p)
        canon_blocks.append(tuple(pairs))
        sums.append(sum(vals[i] * vals[j] for i, j in pairs))
    if seen != all_pairs:
        raise ValueError("blocks do not cover all pairs")
    if len(set(sums)) != 1:
        raise ValueError(f"block sums differ: {sums}")
    canon_blocks.sort(key=lambda blk: blk[0])
    p2 = sum(v * v for v in vals)
    tags = tuple(_block_tag(k, blk) for blk in canon_blocks)
    return DecompInstance(
        values=vals,
        m=len(canon_blocks),
        blocks=tuple(canon_blocks),
        block_sum=sums[0],
        sum_squares=p2,
        gap=p2 - sums[0],
        tags=tags,
        provenance=provenance,
    )


# ---------------------------------------------------------------------------
# elementary operations


def pairwise_products(values) -> list[tuple[tuple[int, int], int]]:
    """All C(k,2) index pairs with their products, lexicographic pair order."""
    vals = list(values)
    if len(vals) < 2:
        raise ValueError("need at least two values")
    return [((i, j), vals[i] * vals[j]) for i, j in combinations(range(len(vals)), 2)]


def enumerate_balanced_partitions(values, m: int, *, equal_size: bool = False,
                                  counter: list | None = None, budget: int | None = None):
    """All unordered partitions of the pair set into m nonempty equal-sum blocks.

    Backtracks over pair assignments in restricted-growth order, which both
    avoids duplicate unordered partitions and leaves blocks sorted by their
    smallest contained pair.  A block exceeding the target sum prunes, but
    only when every product is nonnegative (signed tuples disable the bound).
    Returns [] when m does not divide the total pairwise-product sum.
    """
    vals = list(values)
    k = len(vals)
    if k < 2:
        raise ValueError("need at least two values")
    n_pairs = k * (k - 1) // 2
    if not 2 <= m <= n_pairs:
        raise ValueError(f"m must be in [2, {n_pairs}]")
    pairs = [p for p, _ in pairwise_products(vals)]
    prods = [vals[i] * vals[j] for i, j in pairs]
    total = sum(prods)
    if total % m:
        return []
    target = total // m
    if equal_size and n_pairs % m:
        return []
    per_block = n_pairs // m
    can_prune = all(p >= 0 for p in prods)

    sums = [0] * m
    counts = [0] * m
    assign = [0] * n_pairs
    out = []
    nodes = counter if counter is not None else [0]

    def rec(idx: int, used: int):
        nodes[0] += 1
        if budget is not None and nodes[0] > budget:
            raise NodeBudgetExceeded(budget)
        if idx == n_pairs:
            if used == m and all(s == target for s in sums):
                out.append([[pairs[i] for i in range(n_pairs) if assign[i] == b]
                            for b in range(m)])
            return
        if m - used > n_pairs - idx:
            return  # not enough pairs left to open the remaining blocks
        top = min(used + 1, m)
        for b in range(top):
            s = sums[b] + prods[idx]
            if can_prune and s > target:
                continue
            if equal_size and counts[b] == per_block:
                continue
            sums[b] += prods[idx]
            counts[b] += 1
            assign[idx] = b
            rec(idx + 1, used + (1 if b == used else 0))
            sums[b] -= prods[idx]
            counts[b] -= 1
        return

    rec(0, 0)
    return out


def distance_class_check(values, e: int):
    """Cyclic-distance class sums of an ordered tuple padded with one zero slot.

    For k = e-1 with e an odd prime, the (e-1)/2 class sums gamma_d are the
    autocorrelations of the padded tuple; their equality certifies that the
    distance classes themselves form a balanced partition.
    """
    vals = list(values)
    k = len(vals)
    if k + 1 != e or e < 3 or not is_prime(e):
        raise ValueError(f"need k = e-1 with e an odd prime, got k={k}, e={e}")
    padded = vals + [0]
    sums = []
    for d in range(1, (e - 1) // 2 + 1):
        sums.append(sum(padded[i] * padded[(i + d) % e] for i in range(e)))
    return sums, len(set(sums)) == 1


def distance_class_blocks(k: int, e: int) -> list[list[tuple[int, int]]]:
    """Index pairs of a k-tuple grouped by cyclic distance modulo e = k+1."""
    blocks: list[list[tuple[int, int]]] = [[] for _ in range((e - 1) // 2)]
    for i, j in combinations(range(k), 2):
        d = min((j - i) % e, (i - j) % e)
        blocks[d - 1].append((i, j))
    return blocks


# ---------------------------------------------------------------------------
# structure classification


def _block_tag(k: int, block) -> str:
    if k != 4 or len(block) != 3:
        return "unclassified"
    deg: dict[int, int] = {}
    for i, j in block:
        deg[i] = deg.get(i, 0) + 1
        deg[j] = deg.get(j, 0) + 1
    degs = sorted(deg.values(), reverse=True)
    if degs == [2, 2, 2]:
        return "triangle"
    if degs == [3, 1, 1, 1]:
        return "star"
    if degs == [2, 2, 1, 1]:
        return "hamiltonian-path"
    return "matching-plus-edge"


@dataclass(frozen=True)
class BlockRewrite:
    """block_sum = product(edge) + pivot_value * (sum of the pivot's neighbors)."""

    edge: tuple[int, int]
    edge_product: int
    pivot: int
    pivot_value: int
    neighbor_sum: int

    @property
    def grouped(self) -> int:
        return self.pivot_value * self.neighbor_sum


@dataclass(frozen=True)
class BlockStructure:
    block: tuple[tuple[int, int], ...]
    tag: str
    rewrites: tuple[BlockRewrite, ...]


def classify_structure(instance: DecompInstance) -> list[BlockStructure]:
    """Label each block's shape and emit its edge-plus-common-factor rewrites.

    A rewrite exists for every vertex c whose incident edges are all of the
    block except exactly one: the block sum then reads as that edge's product
    plus c times the sum of c's neighbors.
    """
    vals = instance.values
    out = []
    for blk in instance.blocks:
        tag = _block_tag(len(vals), blk)
        rewrites = []
        vertices = sorted({v for pair in blk for v in pair})
        for c in vertices:
            at_c = [p for p in blk if c in p]
            rest = [p for p in blk if c not in p]
            if len(rest) != 1 or len(at_c) < 2:
                continue
            (i, j) = rest[0]
            neighbors = [a if b == c else b for a, b in at_c]
            rewrites.append(BlockRewrite(
                edge=(i, j),
                edge_product=vals[i] * vals[j],
                pivot=c,
                pivot_value=vals[c],
                neighbor_sum=sum(vals[v] for v in neighbors),
            ))
        out.append(BlockStructure(block=blk, tag=tag, rewrites=tuple(rewrites)))
    return out


# ---------------------------------------------------------------------------
# filters


FILTER_NAMES = ("cube_gap", "prime_gap", "distance_class_only")


@dataclass(frozen=True)
class FilterReport:
    passed: bool
    details: dict = field(default_factory=dict)


def apply_filters(instance: DecompInstance, filters) -> FilterReport:
    """cube_gap: sum_squares - block_sum is a perfect cube;
    prime_gap (m = 2 only): sum_squares - 2*block_sum is prime."""
    details: dict = {}
    passed = True
    fs = set(filters)
    unknown = fs - set(FILTER_NAMES)
    if unknown:
        raise ValueError(f"unknown filters: {sorted(unknown)}")
    if "cube_gap" in fs:
        root = perfect_cube_test(instance.gap)
        details["cube_gap"] = {"gap": instance.gap, "root": root}
        passed = passed and root is not None
    if "prime_gap" in fs:
        value = instance.sum_squares - 2 * instance.block_sum
        ok = instance.m == 2 and value > 1 and is_prime(value)
        details["prime_gap"] = {"value": value, "prime": ok}
        passed = passed and ok
    return FilterReport(passed, details)


# ---------------------------------------------------------------------------
# the search itself


@dataclass(frozen=True)
class SearchConfig:
    k: int
    m: int
    lo: int
    hi: int
    distinct: bool = False
    filters: tuple[str, ...] = ()
    limit: int | None = None
    jobs: int = 1
    equal_size: bool = False
    node_budget: int = 10**8

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be at least 2")
        if self.m < 2:
            raise ValueError("m must be at least 2")
        # m > C(k,2) is not rejected: such a split is impossible, so the
        # search is simply empty
        if self.lo > self.hi:
            raise ValueError("lo must not exceed hi")
        if self.lo < 1:
            raise ValueError("search ranges over positive integers")
        if self.limit is not None and self.limit < 1:
            raise ValueError("limit must be at least 1")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        if self.node_budget < 1:
            raise ValueError("node budget must be positive")
        unknown = set(self.filters) - set(FILTER_NAMES)
        if unknown:
            raise ValueError(f"unknown filters: {sorted(unknown)}")
        if "distance_class_only" in self.filters:
            e = self.k + 1
            if e < 3 or not is_prime(e):
                raise ValueError("distance_class_only needs k+1 to be an odd prime")
            if self.m != (e - 1) // 2:
                raise ValueError(f"distance_class_only needs m = k/2 = {(e - 1) // 2}")


def _tuple_instances(config: SearchConfig, vals: tuple[int, ...], nodes: list) -> list[DecompInstance]:
    """Instances contributed by one candidate tuple, in canonical order."""
    prods = [vals[i] * vals[j] for i, j in combinations(range(config.k), 2)]
    if config.m > len(prods):
        return []
    e2 = sum(prods)
    if e2 % config.m:
        return []
    target = e2 // config.m
    p2 = sum(v * v for v in vals)
    plain = [f for f in config.filters if f != "distance_class_only"]
    if plain:
        gap = p2 - target
        if "cube_gap" in plain and perfect_cube_test(gap) is None:
            return []
        if "prime_gap" in plain:
            value = p2 - 2 * target
            if config.m != 2 or value <= 1 or not is_prime(value):
                return []

    out: list[DecompInstance] = []
    if "distance_class_only" in config.filters:
        e = config.k + 1
        seen_keys = set()
        found = []
        for arrangement in permutations(vals):
            nodes[0] += 1
            sums, balanced = distance_class_check(arrangement, e)
            if not balanced or sums[0] != target:
                continue
            inst = make_instance(arrangement, distance_class_blocks(config.k, e))
            if inst.key not in seen_keys:
                seen_keys.add(inst.key)
                found.append(inst)
        found.sort(key=lambda i: i.values)
        out.extend(found)
    else:
        parts = enumerate_balanced_partitions(
            vals, config.m, equal_size=config.equal_size, counter=nodes,
        )
        for blocks in parts:
            out.append(make_instance(vals, blocks))
    return out


def _run_shard(config: SearchConfig, first: int):
    """All instances whose tuple starts with `first`.

    Returns (list of (instance, nodes_at_emission), nodes_used, aborted).
    Node counts are shard-local so the caller can re-trim deterministically.
    """
    nodes = [0]
    emitted: list[tuple[DecompInstance, int]] = []
    aborted = False
    k = config.k
    step = 1 if config.distinct else 0

    stack = [first]

    def extend() -> bool:
        nodes[0] += 1
        if nodes[0] > config.node_budget:
            return False
        if len(stack) == k:
            for inst in _tuple_instances(config, tuple(stack), nodes):
                emitted.append((inst, nodes[0]))
                if config.limit is not None and len(emitted) >= config.limit:
                    return True  # shard never needs more than the global limit
            return True
        lo = stack[-1] + step
        for v in range(lo, config.hi + 1):
            stack.append(v)
            ok = extend()
            stack.pop()
            if not ok:
                return False
            if config.limit is not None and len(emitted) >= config.limit:
                return True
        return True

    if first <= config.hi:
        if not extend():
            aborted = True
    return emitted, nodes[0], aborted


def search(config: SearchConfig):
    """Yield instances in lexicographic tuple order, identically for any jobs.

    Work is sharded on the first tuple element; shards are pure and merged
    in order, with the node budget accounted against shard-local counts so
    the emitted stream does not depend on parallelism.  Raises
    NodeBudgetExceeded after yielding everything the budget allows.
    """
    firsts = list(range(config.lo, config.hi + 1))
    if config.distinct:
        firsts = firsts[: max(0, len(firsts) - config.k + 1)]

    def consume():
        if config.jobs == 1 or len(firsts) <= 1:
            for f in firsts:
                yield _run_shard(config, f)
        else:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=config.jobs) as pool:
                futures = [pool.submit(_run_shard, config, f) for f in firsts]
                for fut in futures:
                    yield fut.result()

    consumed = 0
    yielded = 0
    for emitted, used, aborted in consume():
        cap = config.node_budget - consumed
        for inst, at in emitted:
            if at > cap:
                raise NodeBudgetExceeded(config.node_budget)
            yield inst
            yielded += 1
            if config.limit is not None and yielded >= config.limit:
                return
        if aborted or used > cap:
            raise NodeBudgetExceeded(config.node_budget)
        consumed += used
