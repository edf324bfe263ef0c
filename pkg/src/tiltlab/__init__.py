"""Exact computations with two-term tilting complexes over quiver algebras.

Submodules:

- ``exactla``: rational linear algebra (RREF, kernels, subspaces, quotients)
- ``quiveralg``: quivers, presented algebras, ideals, factor algebras
- ``modcat``: representations, Hom, presentations, tau, Ext^1, decomposition
- ``complexcat``: two-term complexes and their homotopy category
- ``hkm``: construction from torsion pairs and the verification pipelines
- ``cli``: file formats, fixtures and the command line
"""

__version__ = "0.1.0"
