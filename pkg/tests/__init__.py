# Test suite for kdv-lab
