#!/usr/bin/env python3
"""Writes the tabular fixtures under fixtures/tabular."""

import itertools
import json
import pathlib
import sys


def preorder(name, objects, leq, classes, names=None, functorial=True):
    names = names or {}
    mor = {}
    for a, b in itertools.product(objects, objects):
        if leq(a, b):
            mor[(a, b)] = names.get((a, b), f"id_{a}" if a == b else f"{a}_{b}")

    def arrow(a, b):
        we, fib, cof = classes(a, b)
        return {"name": mor[(a, b)], "dom": a, "cod": b, "we": we, "fib": fib, "cof": cof}

    def least(cands):
        for z in cands:
            if all(leq(z, w) for w in cands):
                return z
        return None

    def greatest(cands):
        for z in cands:
            if all(leq(w, z) for w in cands):
                return z
        return None

    def join(x, y):
        return least([z for z in objects if leq(x, z) and leq(y, z)])

    def meet(x, y):
        return greatest([z for z in objects if leq(z, x) and leq(z, y)])

    out = {
        "name": name,
        "objects": objects,
        "morphisms": [arrow(a, b) for (a, b) in mor],
        "identities": {a: mor[(a, a)] for a in objects},
        "composition": [
            [mor[(b, c)], mor[(a, b)], mor[(a, c)]]
            for a, b, c in itertools.product(objects, objects, objects)
            if (a, b) in mor and (b, c) in mor
        ],
        "initial": least(objects),
        "terminal": greatest(objects),
        "coproducts": [],
        "products": [],
        "pushouts": [],
        "pullbacks": [],
    }
    for x, y in itertools.product(objects, objects):
        j, m = join(x, y), meet(x, y)
        if j is not None:
            out["coproducts"].append(
                {"left": x, "right": y, "object": j, "in0": mor[(x, j)], "in1": mor[(y, j)]})
        if m is not None:
            out["products"].append(
                {"left": x, "right": y, "object": m, "pr0": mor[(m, x)], "pr1": mor[(m, y)]})
    for (a, b), (a2, c) in itertools.product(mor, mor):
        if a == a2:
            j = join(b, c)
            out["pushouts"].append({"f": mor[(a, b)], "g": mor[(a, c)], "object": j,
                                    "in_f": mor[(b, j)], "in_g": mor[(c, j)]})
    for (a, c), (b, c2) in itertools.product(mor, mor):
        if c == c2:
            m = meet(a, b)
            out["pullbacks"].append({"f": mor[(a, c)], "g": mor[(b, c)], "object": m,
                                     "pr_f": mor[(m, a)], "pr_g": mor[(m, b)]})

    def factor(a, b, left_ok, right_ok, in_left, in_right):
        if in_left(a, b):
            return b
        if in_right(a, b):
            return a
        for m in objects:
            if leq(a, m) and leq(m, b) and left_ok(a, m) and right_ok(m, b):
                return m
        raise ValueError(f"{name}: no factorization of {a} -> {b}")

    cof = lambda a, b: classes(a, b)[2]
    fib = lambda a, b: classes(a, b)[1]
    trivcof = lambda a, b: classes(a, b)[0] and classes(a, b)[2]
    trivfib = lambda a, b: classes(a, b)[0] and classes(a, b)[1]
    fact = {"functorial": functorial, "normal": True, "cof_trivfib": [], "trivcof_fib": []}
    for (a, b) in mor:
        m = factor(a, b, cof, trivfib, cof, trivfib)
        fact["cof_trivfib"].append({"map": mor[(a, b)], "left": mor[(a, m)], "right": mor[(m, b)]})
        m = factor(a, b, trivcof, fib, trivcof, fib)
        fact["trivcof_fib"].append({"map": mor[(a, b)], "left": mor[(a, m)], "right": mor[(m, b)]})
    out["factorizations"] = fact
    return out


def all_classes(a, b):
    return (True, True, True)


def walking_isomorphism():
    return preorder("walking_isomorphism", ["A", "B"], lambda a, b: True, all_classes,
                    names={("A", "B"): "u", ("B", "A"): "v"})


def walking_arrow():
    # Every map in every class: the square of the arrow against itself has no lift.
    return preorder("walking_arrow", ["0", "1"], lambda a, b: a <= b, all_classes,
                    names={("0", "1"): "a"})


def grid(functorial):
    # [1] x [2]; on [1]: we = isos, cof = fib = all; on [2]: we = all,
    # cof = {ids, 0->1}, fib = {ids, 1->2}.
    objects = [f"{i}{j}" for i in range(2) for j in range(3)]

    def leq(a, b):
        return a[0] <= b[0] and a[1] <= b[1]

    def classes(a, b):
        j, k = int(a[1]), int(b[1])
        we = a[0] == b[0]
        cof = j == k or (j, k) == (0, 1)
        fib = j == k or (j, k) == (1, 2)
        return (we, fib, cof)

    name = "grid" if functorial else "grid_nonfunctorial"
    return preorder(name, objects, leq, classes, functorial=functorial)


def empty():
    return {"name": "empty", "objects": [], "morphisms": [], "identities": {}, "composition": [],
            "initial": None, "terminal": None}


def germ_toy():
    # Two homotopies f ~> g on cylinders W1, W2 with no maps between them.
    objects = ["X", "Y", "T", "W1", "W2"]
    plain = {"we": False, "fib": False, "cof": False}
    ids = [{"name": f"id_{o}", "dom": o, "cod": o, "we": True, "fib": True, "cof": True} for o in objects]
    arrows = [
        ("f", "X", "Y"), ("g", "X", "Y"), ("a0", "X", "W1"), ("a1", "X", "W1"),
        ("b0", "X", "W2"), ("b1", "X", "W2"), ("x", "X", "T"), ("ha", "W1", "Y"), ("hb", "W2", "Y"),
    ]
    morphisms = ids + [dict(name=n, dom=d, cod=c, **plain) for n, d, c in arrows]
    morphisms += [{"name": s, "dom": w, "cod": "T", "we": True, "fib": False, "cof": False}
                  for s, w in (("s1", "W1"), ("s2", "W2"))]
    composition = [
        ["s1", "a0", "x"], ["s1", "a1", "x"], ["s2", "b0", "x"], ["s2", "b1", "x"],
        ["ha", "a0", "f"], ["ha", "a1", "g"], ["hb", "b0", "f"], ["hb", "b1", "g"],
    ]
    return {"name": "germ_toy", "objects": objects, "morphisms": morphisms,
            "identities": {o: f"id_{o}" for o in objects}, "composition": composition,
            "initial": None, "terminal": None}


def main():
    out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "fixtures/tabular")
    out.mkdir(parents=True, exist_ok=True)
    fixtures = {
        "walking_isomorphism": walking_isomorphism(),
        "walking_arrow": walking_arrow(),
        "empty": empty(),
        "grid": grid(True),
        "grid_nonfunctorial": grid(False),
        "germ_toy": germ_toy(),
    }
    for name, data in fixtures.items():
        (out / f"{name}.json").write_text(json.dumps(data, indent=1) + "\n")


if __name__ == "__main__":
    main()
