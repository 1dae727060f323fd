"""Dynamic priority search tree over planar points.

Leaf-oriented weight-balanced search tree on effective x-keys combined
with a y-min tournament: every stored point is claimed by exactly one
node on the path from the root to its leaf, and claim y-keys increase
from root to leaf (min-heap chain).  The root's claim is therefore the
global y-minimum.

Balance uses Adams-style weight rules on leaf counts (rotate when one
side exceeds three times the other, double rotation when the inner
grandchild dominates), which keeps the height logarithmic.  Rotations
repair the tournament locally: detach the two claims, refill by
pulling the child minimum up, and sift the displaced claim back down
toward its home leaf.
"""

from __future__ import annotations

import math

from .core import Point, Query3, StructureMetrics

__all__ = ["Pst", "DuplicateIdError", "MissingIdError"]

_DELTA = 3  # weight ratio bound
_GAMMA = 2  # single vs double rotation split


class DuplicateIdError(ValueError):
    pass


class MissingIdError(KeyError):
    pass


class _Node:
    __slots__ = ("leaf", "key", "left", "right", "weight", "slot", "own")

    def __init__(self, leaf, key, own=None):
        self.leaf = leaf
        self.key = key  # leaves: own xkey; internal: max xkey of left subtree
        self.left = None
        self.right = None
        self.weight = 1
        self.slot = None  # claimed tournament point
        self.own = own  # leaves only: the identity point


class Pst:
    """Dynamic PST: insert/delete by point id, 3-sided query, min-y."""

    def __init__(self):
        self.root = None
        self.size = 0
        self._leaves = {}  # id -> leaf node
        self.metrics = StructureMetrics()

    # -- construction -------------------------------------------------

    @classmethod
    def build(cls, points) -> "Pst":
        """Bulk build; input may be any iterable of points."""
        t = cls()
        pts = sorted(points, key=lambda p: p.xkey)
        if not pts:
            return t
        ids = set()
        for p in pts:
            if p.id in ids:
                raise DuplicateIdError(f"duplicate id {p.id}")
            ids.add(p.id)
        t.root = t._build_shape(pts, 0, len(pts))
        t._fill(t.root, sorted(pts, key=lambda p: p.ykey))
        t.size = len(pts)
        return t

    def _build_shape(self, pts, lo, hi):
        if hi - lo == 1:
            p = pts[lo]
            node = _Node(True, p.xkey, p)
            self._leaves[p.id] = node
            return node
        mid = (lo + hi) // 2
        node = _Node(False, pts[mid - 1].xkey)
        node.left = self._build_shape(pts, lo, mid)
        node.right = self._build_shape(pts, mid, hi)
        node.weight = hi - lo
        return node

    def _fill(self, node, ys):
        if not ys:
            return
        node.slot = ys[0]
        if node.leaf:
            return
        rest = ys[1:]
        key = node.key
        self._fill(node.left, [p for p in rest if p.xkey <= key])
        self._fill(node.right, [p for p in rest if p.xkey > key])

    # -- tournament repair helpers -------------------------------------

    @staticmethod
    def _pull_up(node):
        """Refill an emptied slot by promoting child minima downward-up."""
        while not node.leaf:
            l, r = node.left, node.right
            ls = l.slot
            rs = r.slot
            if ls is None and rs is None:
                return
            if rs is None or (ls is not None and ls.ykey < rs.ykey):
                node.slot = ls
                l.slot = None
                node = l
            else:
                node.slot = rs
                r.slot = None
                node = r

    @staticmethod
    def _place(node, p):
        """Sift a detached point down toward its home leaf."""
        while not node.leaf:
            s = node.slot
            if s is None:
                node.slot = p
                return
            if p.ykey < s.ykey:
                node.slot, p = p, s
            node = node.left if p.xkey <= node.key else node.right
        assert node.slot is None and node.own.id == p.id
        node.slot = p

    # -- rotations ------------------------------------------------------

    def _rot_left(self, u):
        v = u.right
        a, b = u.slot, v.slot
        u.slot = None
        v.slot = None
        u.right = v.left
        v.left = u
        u.weight = u.left.weight + u.right.weight
        v.weight = u.weight + v.right.weight
        v.slot = a
        self._pull_up(u)
        if b is not None:
            self._place(v, b)
        return v

    def _rot_right(self, u):
        v = u.left
        a, b = u.slot, v.slot
        u.slot = None
        v.slot = None
        u.left = v.right
        v.right = u
        u.weight = u.left.weight + u.right.weight
        v.weight = u.weight + v.left.weight
        v.slot = a
        self._pull_up(u)
        if b is not None:
            self._place(v, b)
        return v

    def _balance(self, node):
        lw, rw = node.left.weight, node.right.weight
        if rw > _DELTA * lw:
            r = node.right
            if r.left.weight >= _GAMMA * r.right.weight:
                node.right = self._rot_right(r)
            return self._rot_left(node)
        if lw > _DELTA * rw:
            l = node.left
            if l.right.weight >= _GAMMA * l.left.weight:
                node.left = self._rot_left(l)
            return self._rot_right(node)
        return node

    def _rebalance_path(self, stack):
        for i in range(len(stack) - 2, -1, -1):
            node = stack[i]
            node.weight = node.left.weight + node.right.weight
            new_node = self._balance(node)
            if new_node is not node:
                if i == 0:
                    self.root = new_node
                else:
                    par = stack[i - 1]
                    if par.left is node:
                        par.left = new_node
                    else:
                        par.right = new_node
                stack[i] = new_node

    # -- updates ---------------------------------------------------------

    def insert(self, p: Point):
        if p.id in self._leaves:
            raise DuplicateIdError(f"id {p.id} already present")
        if self.root is None:
            leaf = _Node(True, p.xkey, p)
            leaf.slot = p
            self.root = leaf
            self._leaves[p.id] = leaf
            self.size = 1
            return
        stack = [self.root]
        node = self.root
        while not node.leaf:
            node = node.left if p.xkey <= node.key else node.right
            stack.append(node)
        old_leaf = node
        new_leaf = _Node(True, p.xkey, p)
        self._leaves[p.id] = new_leaf
        joint = _Node(False, None)
        if p.xkey < old_leaf.key:
            joint.left, joint.right, joint.key = new_leaf, old_leaf, p.xkey
        else:
            joint.left, joint.right, joint.key = old_leaf, new_leaf, old_leaf.key
        joint.weight = 2
        if len(stack) == 1:
            self.root = joint
        else:
            par = stack[-2]
            if par.left is old_leaf:
                par.left = joint
            else:
                par.right = joint
        stack[-1] = joint
        self._pull_up(joint)
        self._rebalance_path(stack)
        self.size += 1
        self._place(self.root, p)

    def delete(self, id: int):
        leaf = self._leaves.pop(id, None)
        if leaf is None:
            raise MissingIdError(f"id {id} not present")
        p = leaf.own
        if self.root is leaf:
            self.root = None
            self.size = 0
            return
        stack = [self.root]
        node = self.root
        while not node.leaf:
            node = node.left if p.xkey <= node.key else node.right
            stack.append(node)
        assert node is leaf
        claim = None
        for n in stack:
            if n.slot is not None and n.slot.id == id:
                claim = n
                break
        assert claim is not None, "stored point must be claimed on its root-leaf path"
        claim.slot = None
        self._pull_up(claim)
        par = stack[-2]
        sib = par.right if par.left is leaf else par.left
        carried = par.slot
        if len(stack) == 2:
            self.root = sib
        else:
            grand = stack[-3]
            if grand.left is par:
                grand.left = sib
            else:
                grand.right = sib
        if carried is not None:
            self._place(sib, carried)
        stack = stack[:-2]
        stack.append(sib)
        self._rebalance_path(stack)
        self.size -= 1

    # -- queries -----------------------------------------------------------

    def min_y(self) -> Point | None:
        return self.root.slot if self.root is not None else None

    def query(self, q: Query3) -> set[int]:
        out = set()
        if self.root is None:
            return out
        akey = (q.a,)
        bkey = (q.b, math.inf)
        visits = 0
        stack = [self.root]
        while stack:
            node = stack.pop()
            visits += 1
            s = node.slot
            if s is None or s.y > q.c:
                continue
            if q.a <= s.x <= q.b:
                out.add(s.id)
            if node.leaf:
                continue
            if akey <= node.key:
                stack.append(node.left)
            if node.key < bkey:
                stack.append(node.right)
        self.metrics.node_visits += visits
        return out

    def points(self):
        """Live points, in no particular order."""
        return [leaf.own for leaf in self._leaves.values()]

    def __contains__(self, id):
        return id in self._leaves

    def __len__(self):
        return self.size

    # -- integrity audit ----------------------------------------------------

    def audit(self) -> list[str]:
        """Full recomputation of every invariant; returns violations."""
        problems = []
        if self.root is None:
            if self.size != 0 or self._leaves:
                problems.append("empty tree with nonzero bookkeeping")
            return problems
        seen = []

        def walk(node, lo, hi, parent_slot):
            if node.leaf:
                if node.own is None:
                    problems.append("leaf without identity point")
                    return 1
                if node.key != node.own.xkey:
                    problems.append(f"leaf key mismatch at id {node.own.id}")
                if (lo is not None and node.key <= lo) or (hi is not None and node.key > hi):
                    problems.append(f"leaf {node.own.id} outside routing bounds")
                if node.slot is not None and node.slot.id != node.own.id:
                    problems.append(f"leaf {node.own.id} claims a foreign point")
                if node.slot is not None:
                    seen.append(node.slot.id)
                    if parent_slot is not None and not parent_slot < node.slot.ykey:
                        problems.append(f"heap chain broken at leaf {node.own.id}")
                return 1
            if (lo is not None and node.key <= lo) or (hi is not None and node.key >= hi):
                problems.append("routing key outside bounds")
            s = node.slot
            this_key = None
            if s is not None:
                seen.append(s.id)
                if parent_slot is not None and not parent_slot < s.ykey:
                    problems.append(f"heap chain broken above point {s.id}")
                if (lo is not None and s.xkey <= lo) or (hi is not None and s.xkey > hi):
                    problems.append(f"claimed point {s.id} outside its subtree")
                this_key = s.ykey
            else:
                if node.left.slot is not None or node.right.slot is not None:
                    problems.append("empty slot with claimed descendants")
                this_key = parent_slot
            lw = walk(node.left, lo, node.key, this_key)
            rw = walk(node.right, node.key, hi, this_key)
            if node.weight != lw + rw:
                problems.append(f"stale weight {node.weight} != {lw + rw}")
            if max(lw, rw) > _DELTA * min(lw, rw):
                problems.append(f"weight balance violated ({lw}, {rw})")
            return lw + rw

        total = walk(self.root, None, None, None)
        if total != self.size:
            problems.append(f"leaf count {total} != size {self.size}")
        if len(seen) != self.size or len(set(seen)) != self.size:
            problems.append("claim multiset does not cover points exactly once")
        if set(self._leaves) != set(l.own.id for l in self._leaves.values()):
            problems.append("id map inconsistent")
        return problems
