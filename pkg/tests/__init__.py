# Test suite for spectral-approximation-lab
