"""Based arrow diagrams of spherical curves: invariants, Reidemeister moves, enumeration."""
