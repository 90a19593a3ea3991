# Finite power algebras, closure operators and congruences.
