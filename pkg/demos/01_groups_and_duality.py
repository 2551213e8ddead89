"""Finite abelian groups, the character pairing, and adjoint endomorphisms.

Run with:  python3 demos/01_groups_and_duality.py
"""

from groupident import Endo, Group, annihilator

# A finite abelian group is a product of cyclic factors.  The same object
# stands for its own character group: pair(x, y) evaluates the character
# labelled y at the element x.
g = Group([4, 2])
print("group:", g, "with", g.size, "elements")

x = g.element([1, 1])
y = g.element([2, 1])
print("pair(x, y) =", g.pair(x, y))
print("|pair| =", abs(g.pair(x, y)))

# Bilinearity, checked on the exact integer phases.
lhs = g.pair_phase(g.add(x, x), y)
rhs = (g.pair_phase(x, y) * 2) % g.exponent
print("bilinearity on phases:", lhs == rhs)

# Endomorphisms are integer matrices with a divisibility constraint: the
# entry sending the Z2 generator into Z4 must be even.
e = Endo(g, [[0, 2], [0, 0]])
print("\nendomorphism matrix:", e.matrix)
print("adjoint matrix:     ", e.adjoint().matrix)

# The defining identity (e x, y) = (x, e~ y), exhaustively.
adj = e.adjoint()
worst = max(abs(g.pair(e.apply(a), b) - g.pair(a, adj.apply(b)))
            for a in g.elements() for b in g.elements())
print("adjoint identity max deviation:", worst)

# Kernels, images, and annihilators on a cyclic group.
g6 = Group([6])
doubling = Endo.scalar(g6, 2)
print("\nkernel of x2 on Z6:  ", doubling.kernel())
print("image of x2 on Z6:   ", doubling.image())
print("annihilator of {0,3}:", annihilator(g6, [g6.zero, g6.element([3])]))

# The image of the adjoint is exactly the annihilator of the kernel.
img = sorted(g6.index(z) for z in doubling.adjoint().image())
ann = sorted(g6.index(z) for z in annihilator(g6, doubling.kernel()))
print("adjoint image == annihilator of kernel:", img == ann)

# Elements of order two control the Bernstein-equation converse later on.
print("\ninvolutions in Z6xZ6:", Group([6, 6]).order_two_count())
