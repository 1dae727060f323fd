"""Weight-balanced exponential search tree augmented as a priority
search tree.

Level-i nodes (leaves at level 0) keep their subtree leaf count inside
``[w_i/2 + 1, 2*w_i - 1]`` for ``w_i = ceil(c1 ** (c2 ** i))``, so the
height is doubly logarithmic.  Every node claims at most one point, the
minimum y among its subtree's points not claimed higher up, and each
internal node carries a range-minimum index over its children's claim
y-keys so reporting expands only into subtrees that actually contain
members.

A predecessor dictionary over the leaf x-keys (xindex) provides the
boundary leaves for queries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import Point, Query3, StructureMetrics
from .pst import DuplicateIdError, MissingIdError
from .rmq import RmqIndex
from .xindex import XIndex

__all__ = ["WbParams", "WbNode", "WbPst"]

_NO_POINT = (math.inf, -1)  # rmq sentinel for childless claims


@dataclass(frozen=True)
class WbParams:
    c1: float = 64.0
    c2: float = 1.5
    allow_small: bool = False  # permit c1 below the rebalancing-safe floor

    def validate(self):
        if not (1.0 < self.c2 < 2.0):
            raise ValueError(f"c2 must lie in (1, 2), got {self.c2}")
        floor = 2.0 ** (3.0 / (self.c2 - 1.0))
        if self.c1 < floor and not self.allow_small:
            raise ValueError(
                f"c1={self.c1} below safe floor {floor}; pass allow_small for test scales"
            )
        if self.c1 < 2.0:
            raise ValueError(f"c1 must be at least 2, got {self.c1}")

    def weight(self, level: int) -> int:
        if level < 0:
            raise ValueError("levels are non-negative")
        exp = (self.c2**level) * math.log2(self.c1)
        if exp > 62:
            return 1 << 62
        return math.ceil(self.c1 ** (self.c2**level))


class WbNode:
    __slots__ = (
        "level",
        "weight",
        "children",
        "parent",
        "stored",
        "point",
        "rmq",
        "touch",
        "rebalanced",
    )

    def __init__(self, level, point=None):
        self.level = level
        self.weight = 1 if level == 0 else 0
        self.children = [] if level > 0 else None
        self.parent = None
        self.stored = None  # claimed tournament point
        self.point = point  # leaves: identity point
        self.rmq = None
        self.touch = 0  # subtree updates since last rebalance
        self.rebalanced = False

    @property
    def degree(self):
        return len(self.children) if self.children is not None else 0


class WbPst:
    def __init__(self, params: WbParams | None = None):
        self.params = params or WbParams()
        self.params.validate()
        self.root = None
        self.xdict = XIndex()
        self.size = 0
        self._leaves = {}  # id -> leaf
        self._dirty = set()
        self.metrics = StructureMetrics()
        self.lemma_violations = []  # rebalance-spacing audit failures

    # -- construction --------------------------------------------------------

    @classmethod
    def build(cls, points, params: WbParams | None = None) -> "WbPst":
        t = cls(params)
        pts = sorted(points, key=lambda p: p.xkey)
        if not pts:
            return t
        leaves = []
        for p in pts:
            if p.id in t._leaves:
                raise DuplicateIdError(f"duplicate id {p.id}")
            leaf = WbNode(0, p)
            t._leaves[p.id] = leaf
            leaves.append(leaf)
        t.root = t._stack_levels(leaves)
        t.size = len(pts)
        t._assign(t.root, sorted(pts, key=lambda p: p.ykey))
        for node in t._internal_nodes():
            t._rebuild_rmq(node)
        t.xdict = XIndex()
        t.xdict._load([(leaf.point.xkey, leaf) for leaf in leaves])
        return t

    def _stack_levels(self, nodes):
        level = 1
        while True:
            w = self.params.weight(level)
            groups = []
            cur, curw = [], 0
            for nd in nodes:
                cur.append(nd)
                curw += nd.weight
                if curw >= w:
                    groups.append((cur, curw))
                    cur, curw = [], 0
            if cur:
                groups.append((cur, curw))
            if len(groups) > 1 and groups[-1][1] <= w // 2:
                # fold the light tail into its neighbour, then re-split evenly
                last_c, last_w = groups.pop()
                prev_c, prev_w = groups.pop()
                merged = prev_c + last_c
                total = prev_w + last_w
                if total <= 2 * w - 1:
                    groups.append((merged, total))
                else:
                    half, acc = [], 0
                    while merged and acc < total // 2:
                        half.append(merged.pop(0))
                        acc += half[-1].weight
                    groups.append((half, acc))
                    groups.append((merged, total - acc))
            parents = []
            for members, wsum in groups:
                parent = WbNode(level)
                parent.children = list(members)
                parent.weight = wsum
                for m in members:
                    m.parent = parent
                parents.append(parent)
            if len(parents) == 1:
                return parents[0]
            nodes = parents
            level += 1

    def _assign(self, node, ys):
        """Top-down claim assignment from a y-ascending point list."""
        if not ys:
            return
        node.stored = ys[0]
        if node.level == 0:
            assert len(ys) == 1
            return
        rest = ys[1:]
        if not rest:
            return
        bounds = [self._max_key(ch) for ch in node.children]
        parts = [[] for _ in node.children]
        from bisect import bisect_left

        for p in rest:
            parts[bisect_left(bounds, p.xkey)].append(p)
        for ch, part in zip(node.children, parts):
            self._assign(ch, part)

    def _max_key(self, node):
        while node.level > 0:
            node = node.children[-1]
        return node.point.xkey

    def _internal_nodes(self):
        out = []
        stack = [self.root] if self.root is not None else []
        while stack:
            nd = stack.pop()
            if nd.level > 0:
                out.append(nd)
                stack.extend(nd.children)
        return out

    # -- rmq upkeep ------------------------------------------------------------

    def _rebuild_rmq(self, node):
        vals = [
            ch.stored.ykey if ch.stored is not None else _NO_POINT
            for ch in node.children
        ]
        node.rmq = RmqIndex(vals)
        self.metrics.rebalance_work += len(vals)

    def _mark(self, node):
        if node is not None and node.level > 0:
            self._dirty.add(node)

    def _flush_dirty(self):
        for node in self._dirty:
            if node.children is None or not node.children:
                continue  # leaves and detached nodes
            if node.parent is None and node is not self.root:
                continue
            self._rebuild_rmq(node)
        self._dirty.clear()

    # -- claim plumbing ----------------------------------------------------------

    def _chain(self, point):
        node = self._leaves[point.id]
        out = [node]
        while node.parent is not None:
            node = node.parent
            out.append(node)
        return out  # leaf .. root

    def _sift_down(self, start, p):
        """Place a detached point at/under start, displacing larger claims."""
        path = self._chain(p)
        try:
            i = path.index(start)
        except ValueError:
            raise AssertionError("placement start must be an ancestor of the home leaf")
        node = start
        while True:
            s = node.stored
            if s is None:
                node.stored = p
                self._mark(node.parent)
                return
            if p.ykey < s.ykey:
                node.stored = p
                self._mark(node.parent)
                p = s
                path = self._chain(p)
                i = path.index(node)
            if i == 0:
                raise AssertionError("leaf collision while placing a claim")
            i -= 1
            node = path[i]

    def _refill(self, node):
        """Bubble an emptied claim slot toward the leaves."""
        while node.level > 0:
            best = None
            for ch in node.children:
                if ch.stored is not None and (best is None or ch.stored.ykey < best.stored.ykey):
                    best = ch
            if best is None:
                return
            node.stored = best.stored
            best.stored = None
            self._mark(node)
            self._mark(best.parent)
            node = best
        # leaves refill from nothing

    # -- rebalancing ----------------------------------------------------------------

    def _check_spacing(self, node):
        """Rebalance-interval audit: a node may overflow or underflow again
        only after enough updates touched its subtree."""
        if node.rebalanced and not self.params.allow_small:
            need = math.ceil(self.params.weight(node.level) / 8)
            if node.touch < need:
                self.lemma_violations.append(
                    f"level-{node.level} node rebalanced after {node.touch} < {need} updates"
                )

    @staticmethod
    def _reset_rebalance(node):
        node.touch = 0
        node.rebalanced = True

    def _split(self, u):
        w = self.params.weight(u.level)
        self._reset_rebalance(u)
        acc = 0
        cross = None
        for idx, ch in enumerate(u.children):
            acc += ch.weight
            if acc > w:
                cross = idx
                break
        if cross is None:
            cross = len(u.children) - 1
        left_part = u.children[:cross]
        x = u.children[cross]
        right_part = u.children[cross + 1 :]
        lw = sum(ch.weight for ch in left_part)
        rw = sum(ch.weight for ch in right_part)
        if lw <= rw:  # ties to the left
            left_part.append(x)
            lw += x.weight
        else:
            right_part.insert(0, x)
            rw += x.weight
        v = WbNode(u.level)
        self._reset_rebalance(v)
        u.children = left_part
        u.weight = lw
        v.children = right_part
        v.weight = rw
        for ch in right_part:
            ch.parent = v
        parent = u.parent
        created_root = None
        if parent is None:
            created_root = WbNode(u.level + 1)
            created_root.children = [u, v]
            created_root.weight = lw + rw
            u.parent = created_root
            v.parent = created_root
            self.root = created_root
            self._mark(created_root)
        else:
            pos = parent.children.index(u)
            parent.children.insert(pos + 1, v)
            v.parent = parent
            self._mark(parent)
        self._mark(u)
        self._mark(v)
        # the claim of u belongs on one side; the other side refills
        moved = u.stored
        if moved is not None:
            home = self._leaves[moved.id]
            anc = home
            under_u = False
            while anc is not None:
                if anc is u:
                    under_u = True
                    break
                if anc is v:
                    break
                anc = anc.parent
            if not under_u:
                u.stored = None
                v.stored = moved
                self._refill(u)
            else:
                self._refill(v)
        if created_root is not None:
            self._refill(created_root)
        self._mark(u.parent)
        return v

    def _merge(self, u):
        """Fold an underflowed node into an adjacent sibling; may re-split."""
        parent = u.parent
        pos = parent.children.index(u)
        if pos > 0:
            v = parent.children[pos - 1]
            v.children = v.children + u.children
        else:
            v = parent.children[pos + 1]
            v.children = u.children + v.children
        moved_children = list(u.children)
        for ch in moved_children:
            ch.parent = v
        v.weight += u.weight
        parent.children.remove(u)
        self._reset_rebalance(v)
        u.parent = None
        u.children = []
        self._mark(parent)
        self._mark(v)
        # combine the two claims: smaller stays on top, larger sifts down
        a, b = v.stored, u.stored
        if a is None:
            v.stored = b
        elif b is not None:
            if b.ykey < a.ykey:
                v.stored = b
                self._sift_down(v, a)
            else:
                self._sift_down(v, b)
        if 2 * v.weight > 3 * self.params.weight(v.level):  # share
            self._split(v)
        for ch in moved_children:
            if (
                ch.level > 0
                and 2 * ch.weight <= self.params.weight(ch.level)
                and ch.parent is not None
                and ch.parent.degree >= 2
            ):
                self._merge(ch)
        return v

    # -- updates ----------------------------------------------------------------------

    def insert(self, p: Point):
        if p.id in self._leaves:
            raise DuplicateIdError(f"id {p.id} already present")
        leaf = WbNode(0, p)
        self._leaves[p.id] = leaf
        if self.root is None:
            top = WbNode(1)
            top.children = [leaf]
            top.weight = 1
            leaf.parent = top
            self.root = top
            top.stored = p
            self.xdict.insert(p.xkey, leaf)
            self.size = 1
            self._mark(top)
            self._flush_dirty()
            return
        pred = self.xdict.search(p.xkey)
        if pred is None:
            host = self.root
            while host.level > 1:
                host = host.children[0]
            host.children.insert(0, leaf)
        else:
            host = pred.parent
            host.children.insert(host.children.index(pred) + 1, leaf)
        leaf.parent = host
        self.xdict.insert(p.xkey, leaf)
        self.size += 1
        node = host
        while node is not None:
            node.weight += 1
            node.touch += 1
            node = node.parent
        self._mark(host)
        node = host
        while node is not None:
            nxt = node.parent
            if node.level >= 1 and node.weight > 2 * self.params.weight(node.level) - 1:
                self._check_spacing(node)
                self._split(node)
            node = nxt
        self._sift_down(self.root, p)
        self._flush_dirty()

    def delete(self, id: int):
        leaf = self._leaves.get(id)
        if leaf is None:
            raise MissingIdError(f"id {id} not present")
        p = leaf.point
        # un-claim
        node = leaf
        while node is not None and (node.stored is None or node.stored.id != id):
            node = node.parent
        assert node is not None, "live point must be claimed on its path"
        node.stored = None
        self._mark(node.parent)
        self._refill(node)
        # structural removal
        del self._leaves[id]
        self.xdict.delete(p.xkey)
        parent = leaf.parent
        parent.children.remove(leaf)
        self._mark(parent)
        anc = parent
        while anc is not None:
            anc.weight -= 1
            anc.touch += 1
            anc = anc.parent
        self.size -= 1
        if self.size == 0:
            self.root = None
            self._dirty.clear()
            return
        anc = parent
        while anc is not None:
            nxt = anc.parent
            if anc.parent is not None and 2 * anc.weight <= self.params.weight(anc.level):
                self._check_spacing(anc)
                if anc.parent.degree >= 2:
                    self._merge(anc)
                # a lone underflowed child waits for its parent's merge
            anc = nxt
        while self.root.level > 1 and self.root.degree == 1:
            self.root = self.root.children[0]
            self.root.parent = None
        self._flush_dirty()

    # -- queries ---------------------------------------------------------------------

    def min_y(self) -> Point | None:
        return self.root.stored if self.root is not None else None

    def _leftmost(self):
        node = self.root
        while node.level > 0:
            node = node.children[0]
        return node

    def _path_up(self, leaf):
        out = [leaf]
        while out[-1].parent is not None:
            out.append(out[-1].parent)
        out.reverse()
        return out  # root .. leaf

    def subtree_report(self, u, c, out=None):
        """All ids in T_u with y <= c; the whole subtree must be in x-range.

        Work (node visits plus rmq range expansions) stays within
        3*(reported + 1); exceptions land in metrics via lemma_violations.
        """
        if out is None:
            out = set()
        before = len(out)
        work = self._report(u, c, out)
        reported = len(out) - before
        if work > 3 * (reported + 1):
            self.lemma_violations.append(
                f"subtree report used {work} visits for {reported} members"
            )
        return out

    def _report(self, u, c, out):
        self.metrics.node_visits += 1
        work = 1
        s = u.stored
        if s is None or s.y > c:
            return work
        out.add(s.id)
        if u.level == 0:
            return work
        work += self._expand(u, 0, u.degree - 1, c, out)
        return work

    def _expand(self, u, lo, hi, c, out):
        """RMQ-driven member-child expansion over u.children[lo..hi]."""
        if lo > hi:
            return 0
        pos = u.rmq.query(lo, hi)
        self.metrics.rmq_probes += 1
        work = 1
        child = u.children[pos]
        if child.stored is None or child.stored.y > c:
            return work
        work += self._report(child, c, out)
        work += self._expand(u, lo, pos - 1, c, out)
        work += self._expand(u, pos + 1, hi, c, out)
        return work

    def query(self, q: Query3) -> set[int]:
        out = set()
        if self.root is None:
            return out
        anchor_b = self.xdict.search((q.b, math.inf))
        if anchor_b is None:
            return out
        anchor_a = self.xdict.search((q.a,))
        leaf_a = anchor_a if anchor_a is not None else self._leftmost()
        leaf_b = anchor_b
        path_a = self._path_up(leaf_a)
        path_b = self._path_up(leaf_b)
        k = 0
        while k < len(path_a) and k < len(path_b) and path_a[k] is path_b[k]:
            k += 1
        lca_i = k - 1  # paths share at least the root
        for node in path_a:
            self.metrics.node_visits += 1
            s = node.stored
            if s is not None and s.y <= q.c and q.a <= s.x <= q.b:
                out.add(s.id)
        for node in path_b[k:]:
            self.metrics.node_visits += 1
            s = node.stored
            if s is not None and s.y <= q.c and q.a <= s.x <= q.b:
                out.add(s.id)
        if leaf_a is leaf_b:
            return out
        lca = path_a[lca_i]
        ia = lca.children.index(path_a[lca_i + 1])
        ib = lca.children.index(path_b[lca_i + 1])
        self._member_expand(lca, ia + 1, ib - 1, q.c, out)
        for d in range(lca_i + 1, len(path_a) - 1):
            node = path_a[d]
            idx = node.children.index(path_a[d + 1])
            self._member_expand(node, idx + 1, node.degree - 1, q.c, out)
        for d in range(lca_i + 1, len(path_b) - 1):
            node = path_b[d]
            idx = node.children.index(path_b[d + 1])
            self._member_expand(node, 0, idx - 1, q.c, out)
        return out

    def _member_expand(self, u, lo, hi, c, out):
        if lo > hi:
            return
        pos = u.rmq.query(lo, hi)
        self.metrics.rmq_probes += 1
        child = u.children[pos]
        if child.stored is None or child.stored.y > c:
            return
        self.subtree_report(child, c, out)
        self._member_expand(u, lo, pos - 1, c, out)
        self._member_expand(u, pos + 1, hi, c, out)

    def points(self):
        return [leaf.point for leaf in self._leaves.values()]

    def __len__(self):
        return self.size

    def __contains__(self, id):
        return id in self._leaves

    # -- audit -------------------------------------------------------------------------

    def audit(self) -> list[str]:
        problems = list(self.lemma_violations)
        if self.root is None:
            if self.size or self._leaves:
                problems.append("empty tree with nonzero bookkeeping")
            return problems
        depths = set()
        claims = []

        def walk(node, depth, ancestor_key):
            if node.level == 0:
                depths.add(depth)
                if node.point is None:
                    problems.append("leaf without identity point")
                if node.stored is not None:
                    claims.append(node.stored.id)
                    if node.stored.id != node.point.id:
                        problems.append("leaf claims a foreign point")
                    if ancestor_key is not None and not ancestor_key < node.stored.ykey:
                        problems.append("heap chain broken at a leaf")
                return 1
            w = self.params.weight(node.level)
            if node.parent is not None:
                # strictly more than half, strictly less than double
                if not (2 * node.weight >= w + 1 and node.weight <= 2 * w - 1):
                    problems.append(
                        f"level-{node.level} weight {node.weight} outside ({w / 2}, {2 * w})"
                    )
            elif node.weight > 2 * w - 1:
                problems.append(f"root weight {node.weight} above {2 * w - 1}")
            key = ancestor_key
            if node.stored is not None:
                claims.append(node.stored.id)
                if ancestor_key is not None and not ancestor_key < node.stored.ykey:
                    problems.append(f"heap chain broken above {node.stored.id}")
                key = node.stored.ykey
                leaf = self._leaves.get(node.stored.id)
                if leaf is None or leaf.point != node.stored:
                    problems.append(f"claim {node.stored.id} does not match a live point")
                anc = leaf
                while anc is not None and anc is not node:
                    anc = anc.parent
                if anc is None:
                    problems.append(f"claim {node.stored.id} outside its subtree")
            else:
                for ch in node.children:
                    if ch.stored is not None:
                        problems.append("empty claim with claimed children")
                        break
            expect = [
                ch.stored.ykey if ch.stored is not None else _NO_POINT
                for ch in node.children
            ]
            if node.rmq is None or node.rmq.values != expect:
                problems.append(f"stale rmq at level-{node.level} node")
            total = 0
            last_key = None
            for ch in node.children:
                if ch.parent is not node:
                    problems.append("broken parent link")
                if ch.level != node.level - 1:
                    problems.append("child level mismatch")
                total += walk(ch, depth + 1, key)
                mk = self._max_key(ch)
                if last_key is not None and last_key >= mk:
                    problems.append("children out of x-order")
                last_key = mk
            if total != node.weight:
                problems.append(f"stale weight {node.weight} != {total}")
            return total

        total = walk(self.root, 0, None)
        if len(depths) > 1:
            problems.append(f"leaves at unequal depths {sorted(depths)}")
        if total != self.size:
            problems.append(f"leaf count {total} != size {self.size}")
        if len(claims) != self.size or len(set(claims)) != len(claims):
            problems.append("claims do not cover points exactly once")
        if self.xdict.count != self.size:
            problems.append("xdict size mismatch")
        return problems
