"""Exact integer, rational and Eisenstein lattice arithmetic."""
from trilat.lattice.zlattice import IntLattice, Sublattice, intmat
from trilat.lattice.qomega import QOmega
from trilat.lattice.eisenstein import HermLattice, ZwithRho
