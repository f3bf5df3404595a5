"""Finite-level Galois categories of schemes and their functors.

The package is organised bottom-up:

* :mod:`exodromy.fincat` -- finite categories, functors, posets, slices.
* :mod:`exodromy.fibrations` -- sieves, intervals, comma fibres and the
  left/right/Kan fibration classifiers, Grothendieck construction.
* :mod:`exodromy.finring` -- finite commutative rings as element tables.
* :mod:`exodromy.galmodel` -- truncated Galois categories of finite rings and
  cyclotomic number-ring models.
* :mod:`exodromy.dictionary` -- the scheme/category dictionary checks and the
  suite runner.
"""

__version__ = "0.1.0"
