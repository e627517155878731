"""monolab: exact computational Lie theory toolkit.

Engines: root systems from Cartan matrices, integral Chevalley bases with
exact bracket arithmetic, the principal sl2 and its centralizer
decomposition, the obstruction-prime scan over the negative simple root
spaces, H^0/H^1 of finite matrix groups, and Selmer-style dimension
bookkeeping.  No floating point anywhere.
"""

__version__ = "0.1.0"
