"""Orbit enumeration oracle for labelled triple-linking classes in a box.

Two classes (S, e) on three labels are identified whenever some group element
(w, m) with |m| <= m_max maps one onto the other inside the box. Every such
element is found directly: for each power the translations keeping the image
inside the box are enumerated from its bounding box.
"""
import itertools

from milnorkit.bundle import Monodromy, SolGroupElement, coset_action
from milnorkit.lie import milnor_module, relabel_action


def box_points(r):
    return [(a, b) for a in range(-r, r + 1) for b in range(-r, r + 1)]


def orbit_partition(A: Monodromy, r: int, m_max: int, elements=(1, -1)):
    mod = milnor_module(3, 2)
    classes = [(S, e) for S in itertools.combinations(box_points(r), 3) for e in elements]
    index = {c: i for i, c in enumerate(classes)}
    parent = list(range(len(classes)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    sign_cache = {}
    largest_m = 0
    for S in itertools.combinations(box_points(r), 3):
        for m in range(-m_max, m_max + 1):
            img = [coset_action(A, SolGroupElement((0, 0), m), v) for v in S]
            xs, ys = [p[0] for p in img], [p[1] for p in img]
            for w0 in range(-r - min(xs), r - max(xs) + 1):
                for w1 in range(-r - min(ys), r - max(ys) + 1):
                    T = [(p[0] + w0, p[1] + w1) for p in img]
                    order = sorted(T)
                    perm = tuple(order.index(p) for p in T)
                    if perm not in sign_cache:
                        sign_cache[perm] = relabel_action(perm, mod, [1])[0]
                    largest_m = max(largest_m, abs(m))
                    for e in elements:
                        a = find(index[(S, e)])
                        b = find(index[(tuple(order), e * sign_cache[perm])])
                        parent[a] = b
    return classes, [find(i) for i in range(len(classes))], largest_m


def partitions_agree(labels_a, labels_b) -> bool:
    """Same partition of one index set, given two labelings."""
    fwd, back = {}, {}
    for a, b in zip(labels_a, labels_b):
        if fwd.setdefault(a, b) != b or back.setdefault(b, a) != a:
            return False
    return True
