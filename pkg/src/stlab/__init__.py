"""Effective Sato-Tate statistics: Satake-angle data, coefficient identities and majorants."""

__version__ = "0.1.0"
