"""Periodicity of codings of ordered Bratteli-Vershik systems."""

__version__ = "0.1.0"
