"""duvalext: mechanically rebuilds and checks divisorial extractions from
singular curves lying on Du Val surface sections of a smooth 3-fold.

Subpackages by role:

* :mod:`duvalext.algebra`       exact polynomial arithmetic over QQ
* :mod:`duvalext.groebner`      Buchberger bases, membership, saturation
* :mod:`duvalext.catalog`       ADE data, matrix factorisations, Dynkin graphs
* :mod:`duvalext.curves`        curve normal forms and section conditions
* :mod:`duvalext.unprojection`  serial unprojection towers and Pfaffian models
* :mod:`duvalext.singularities` chart analysis and singularity verdicts
* :mod:`duvalext.resolution`    blowup resolution and decorated Dynkin diagrams
* :mod:`duvalext.casebook`      end-to-end case driver behind the ``casebook`` CLI
"""

__version__ = "0.1.0"
