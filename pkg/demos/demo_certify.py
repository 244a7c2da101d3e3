"""The exact-arithmetic derivation of every constant in the bound chain."""

from altgen.certify import derive_decay_chain, derive_paper_constants, tree_to_json

nodes = derive_paper_constants()

print("== the derivation tree, bottom to top ==")
for name, node in nodes.items():
    lo, hi = node.interval()
    mid = float((lo + hi) / 2)
    print(f"{name:18s} {mid:.6e}   [{node.rule}] {node.citation}")
    for desc, ok in node.checks:
        print(f"{'':18s} check: {desc} -> {ok}")

print()
print("== the decay-chain arithmetic ==")
rep = derive_decay_chain()
for desc, ok in rep["checks"]:
    print(f"  {desc} -> {ok}")
print("  exponent factor samples (side, enclosure):")
for K, lo, hi in rep["samples"]:
    print(f"    {K:>14d}: [{lo:.3f}, {hi:.3f}]")

print()
payload = tree_to_json(nodes)
print(f"serialized tree: {len(payload)} bytes; revalidates:", end=" ")
from altgen.certify import revalidate_tree
print(revalidate_tree(payload))
