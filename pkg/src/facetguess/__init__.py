"""LP decoding of LDPC codes with facet guessing and bit guessing."""
