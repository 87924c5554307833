# Kratzer Algebra
