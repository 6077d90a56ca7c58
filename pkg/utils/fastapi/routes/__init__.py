"""
FastAPI Routes Module
====================

This module contains organized FastAPI routes split by domain:
- core: Basic app functionality (root, health, config)
- groups: Finite matrix group computations
- lattices: Lattice/form pairs, short vectors and isometries
- database: The s.i.m.f. classification database and recognition
"""
