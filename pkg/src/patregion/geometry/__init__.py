"""Exact rational linear algebra, cycle enumeration, polytopes and linear programming."""
