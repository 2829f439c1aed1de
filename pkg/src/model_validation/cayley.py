"""
model_validation/cayley.py
━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
Right Cayley graph of a family as a DOT digraph
"""

import sys
sys.path.append('.')

from graphviz import Digraph

from src.algebra.chain_maps import Family, brute_force_enumerate, compose, generators
from src.errors import UnsupportedFamilyError
from src.utils.logger import get_module_logger

logger = get_module_logger("cayley")


def cayley_graph(fam: Family, n: int) -> Digraph:
    """One node per element (named by its images), one edge alpha -> alpha*g per letter g"""
    fam = Family(fam)
    if fam is Family.PD:
        raise UnsupportedFamilyError("PD has no generating letters; draw D_(n+1) instead")
    elements = brute_force_enumerate(fam, n)
    letters = generators(fam, n)

    g = Digraph(
        name=f"{fam.value}_{n}",
        node_attr=dict(shape="box", fontsize="10"),
        edge_attr=dict(fontsize="8"),
    )
    for alpha in elements:
        g.node(alpha.key())
    for alpha in elements:
        for symbol, gen in letters:
            g.edge(alpha.key(), compose(alpha, gen).key(), label=str(symbol))

    logger.info(f"{fam.value}_{n}: Cayley graph with {len(elements)} nodes, "
                f"{len(elements) * len(letters)} edges")
    return g


def cayley_dot(fam: Family, n: int) -> str:
    """Right Cayley graph of the family as DOT source"""
    return cayley_graph(fam, n).source
