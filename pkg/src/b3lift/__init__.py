"""Liftings of the B3 Nichols algebra family: PBW normal forms and Hopf checks."""
