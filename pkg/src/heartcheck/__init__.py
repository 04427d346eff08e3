"""heartcheck: machine verification of hearts of cotorsion pairs.

Models module categories of linear serial algebras and bounded derived
categories of linear quivers combinatorially, computes cotorsion pairs and
their hearts, and checks that the heart has enough projectives exactly when
the coheart/kernel pair is a (co)torsion pair, in which case the heart is
module-equivalent to the coheart's endomorphism algebra.
"""

__version__ = "0.1.0"
