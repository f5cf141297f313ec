"""Higher Hopf formulae over finite groups, Lie algebras and precrossed modules."""

__version__ = "0.1.0"
