"""Worked examples transcribed by hand, shared by the unit and acceptance tests."""

from poset_operads.poset import Poset

# dimension sequences, arity 1 upward
TRIVIAL_DIMS = {
    2: [1, 2, 6, 22, 90, 394, 1806],
    3: [1, 3, 15, 93, 645, 4791],
    4: [1, 4, 28, 244, 2380, 24868],
    5: [1, 5, 45, 505, 6345, 85405],
}
TWO_CHAINS_DIMS = [1, 4, 20, 124, 860, 6388]

V = Poset.from_relations(3, [(1, 3), (2, 3)])
TWO_CHAINS = Poset.from_relations(4, [(1, 2), (3, 4)])

# non-joinable peaks for V, with both sides
STAR_PEAK = "(star1 _ (star3 (star2 _ _) _))"
STAR_SIDES = {"(star1 _ (star1 (star2 _ _) _))", "(star1 _ (star2 _ (star2 _ _)))"}
SCHRODER_PEAK = "(1 _ (3 (2 _ _) _))"
SCHRODER_SIDES = {"(1 _ (2 _ _) _)", "(1 _ (2 _ _ _))"}

# Schröder compositions: (poset, left, index, right, result, steps)
COMPOSE_POSET = Poset.from_relations(6, [(1, 2), (1, 3), (4, 5), (5, 6)])
COMPOSITIONS = [
    ("(6 (4 _ _) _)", 3, "(2 _ (6 _ _))", "(6 (4 _ _) (2 _ (6 _ _)))"),
    ("(1 _ (4 _ _))", 1, "(2 (3 _ _) (3 _ _))", "(1 _ _ _ _ (4 _ _))"),
]
REWRITING_STEPS = [
    "(1 (2 (3 _ _) (3 _ _)) (4 _ _))",
    "(1 (3 _ _) (3 _ _) (4 _ _))",
    "(1 (3 _ _) _ _ (4 _ _))",
    "(1 _ _ _ _ (4 _ _))",
]

# free algebra over one generator
ALGEBRA_POSET = Poset.from_relations(5, [(1, 2), (1, 3), (3, 4)])
ALGEBRA_LEFT = "(2 _ _ (4 _ _))"
ALGEBRA_RIGHT = "(3 (2 _ _) (5 _ _))"
ALGEBRA_PRODUCTS = {
    1: "(1 _ _ _ _ _ _ (5 _ _))",
    2: "(2 _ _ (4 _ _) (3 (2 _ _) (5 _ _)))",
    3: "(3 (2 _ _ (4 _ _)) (2 _ _) (5 _ _))",
    4: "(3 (2 _ _ (4 _ _)) (2 _ _) (5 _ _))",
    5: "(5 (2 _ _ (4 _ _)) (3 (2 _ _) (5 _ _)))",
}

# antichain algebra
ANTICHAIN_POSET = Poset.from_relations(5, [(1, 2), (1, 3), (1, 4), (2, 5), (4, 5)])
ANTICHAIN_MONOMIALS = [(1,), (2,), (3,), (4,), (5,), (2, 3), (2, 4), (3, 4), (3, 5), (2, 3, 4)]
ANTICHAIN_PRODUCTS = [
    ((2,), 3, (4,), (2, 3, 4)),
    ((2, 3), 1, (4,), (1,)),
    ((2, 3), 5, (4,), (2, 3, 4)),
]

# relation lists for the poset 1<2, 1<3; chains of equal trees and trees equal to zero
LISTS_POSET = Poset.from_relations(3, [(1, 2), (1, 3)])
STAR_LIST = {
    "equal": [
        ["1o11", "1o12", "2o11", "1o13", "3o11", "3o21", "1o23", "2o21", "1o22", "1o21"],
        ["2o12", "2o22"],
        ["3o13", "3o23"],
    ],
    "zero": [],
}
BAR_LIST = {
    # one sum relation: left sum equals right sum
    "sums": [(["1o11", "1o12", "2o11", "1o13", "3o11"], ["3o21", "1o23", "2o21", "1o22", "1o21"])],
    "equal": [["2o12", "2o22"], ["3o13", "3o23"]],
    "zero": ["2o13", "3o12", "3o22", "2o23"],
}
BARB_LIST = {
    "equal": [["1o11", "1o21"], ["2o12", "2o22"], ["3o13", "3o23"]],
    "zero": ["2o13", "3o12", "3o22", "2o23"],
}
TRIANGLE_LIST = {
    "equal": [["1o11", "1o21"], ["2o12", "2o22"], ["3o13", "3o23"]],
    "zero": ["1o12", "2o11", "1o13", "3o11", "3o21", "1o23", "2o21", "1o22"],
}

# basis change example on a non-forest poset
BARB_POSET = Poset.from_relations(5, [(1, 3), (2, 3), (2, 4), (4, 5)])
BARB_IMAGES = {
    "barB1": "bar1 + bar3",
    "barB2": "bar2 + bar3 + bar4 + bar5",
    "barB3": "bar3",
    "barB4": "bar4 + bar5",
    "barB5": "bar5",
}

# duality map images for the two six element thin forests
THIN_Q = Poset.from_relations(6, [(3, 4), (3, 5), (5, 6)])
THIN_Q_DUAL = Poset.from_relations(6, [(1, 2), (2, 3), (2, 4), (4, 5), (4, 6)])
PHI_Q = {
    "star1": "bar1",
    "star2": "bar1 + bar2",
    "star3": "bar1 + bar2 + bar3 + bar4 + bar5 + bar6",
    "star4": "bar1 + bar2 + bar4",
    "star5": "bar1 + bar2 + bar4 + bar5 + bar6",
    "star6": "bar1 + bar2 + bar4 + bar6",
}
PHI_Q_DUAL = {
    "star1": "bar1 + bar2 + bar3 + bar4 + bar5 + bar6",
    "star2": "bar2 + bar3 + bar4 + bar5 + bar6",
    "star3": "bar3",
    "star4": "bar3 + bar4 + bar5 + bar6",
    "star5": "bar3 + bar5",
    "star6": "bar3 + bar5 + bar6",
}


def word_tree(tag, code):
    """'aoib' is the tree tag_a o_i tag_b."""
    from poset_operads.trees import Generator, compose2

    a, i, b = int(code[0]), int(code[2]), int(code[3])
    return compose2(Generator(tag, a), i, Generator(tag, b))


def list_family(tag, spec):
    """Relations spelled by a list: consecutive equalities, zero trees and sum equations."""
    from poset_operads.trees import TreePoly

    fam = []
    for chain in spec.get("equal", []):
        trees = [word_tree(tag, c) for c in chain]
        fam += [TreePoly.binomial(trees[0], t) for t in trees[1:]]
    for c in spec.get("zero", []):
        fam.append(TreePoly({word_tree(tag, c): 1}))
    for left, right in spec.get("sums", []):
        terms = [(word_tree(tag, c), 1) for c in left] + [(word_tree(tag, c), -1) for c in right]
        fam.append(TreePoly(terms, 3))
    return fam
