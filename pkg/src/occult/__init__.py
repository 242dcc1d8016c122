"""Occultations, asterisms and the structures around them, at desk scale."""

__version__ = "0.1.0"
