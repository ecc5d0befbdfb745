"""Orbits, return sets and progression experiments for split maps."""
