"""One-hot maps and multi-resolution stacks
==========================================

A map of resolution N cuts its bounded plane into N x N mutually exclusive
receptive fields. Exactly one cell responds to any point, so a position is
encoded by a single active cell per layer.
"""

from neorl import (
    Modality,
    NresMap,
    UNIT_SQUARE,
    VECTOR_SQUARE,
    Vec2,
    cell_center,
    cell_index,
    encode,
    make_stack,
    ovc_vector,
)

# A single N5 layer over the unit arena: 25 receptive fields.
n5 = NresMap(5, UNIT_SQUARE, Modality.PC)
p = Vec2(0.62, 0.31)
c = cell_index(p, n5)
print(f"point {p} -> cell (row {c.row}, col {c.col}), flat index {c.flat}")
print(f"that cell is centered at {cell_center(c, n5)}")

# Edges fold deterministically: the max edge belongs to the last cell.
print("corner (1,1) ->", cell_index(Vec2(1.0, 1.0), n5))

# A prime stack encodes the same point at six granularities at once.
stack = make_stack((2, 3, 5, 7, 11, 13), UNIT_SQUARE, Modality.PC)
print("\nprime-stack encoding of", p)
for nmap, cell in zip(stack.layers, encode(p, stack)):
    print(f"  N{nmap.resolution:>2}: flat {cell.flat:>4} of {nmap.n_cells}")

# The object-vector modality encodes where things are relative to the self;
# its domain is the full range of relative vectors, [-1, 1]^2 for a unit arena.
self_pos = Vec2(0.5, 0.5)
obj_pos = Vec2(0.7, 0.2)
rel = ovc_vector(obj_pos, self_pos)
ovc5 = NresMap(5, VECTOR_SQUARE, Modality.OVC)
print(f"\nobject at {obj_pos} seen from {self_pos} -> relative {rel}")
print("relative-vector cell:", cell_index(rel, ovc5))
print("zero-vector cell (contact):", cell_index(Vec2(0.0, 0.0), ovc5))
