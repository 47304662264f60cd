# Spectral Approximation Lab – src package
