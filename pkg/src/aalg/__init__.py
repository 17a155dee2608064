"""Special Hermitian structures on almost abelian Lie algebras.

Library layout:

* ``scalars``, ``linalg``, ``forms`` -- dual exact/float scalar kernel,
  dense rational linear algebra, alternating forms with the
  Chevalley-Eilenberg differential;
* ``lie`` -- validated Lie algebras and the codimension-one abelian
  ideal probe;
* ``hermitian`` -- complex structures, metrics, Lee form, the direct
  Kahler/LCK/balanced/LCB/SKT/Vaisman predicates, Levi-Civita and Bismut
  connections and the Bismut-Ricci curvature oracle;
* ``almost_abelian`` -- adapted bases, the (a, v, A) data calculus and
  its closed formulas, the SKT-to-LCB metric construction;
* ``lchk`` -- locally conformally hyperkahler admissibility, canonical
  form and explicit witnesses;
* ``lattice`` -- matrix exponentials and the integer-polynomial lattice
  obstruction probe;
* ``catalog`` -- machine-readable encodings of the named algebras plus a
  verification harness;
* ``documents``/``cli`` -- structure-equation parser and the ``aalg``
  command-line surface.
"""

__version__ = "0.1.0"
