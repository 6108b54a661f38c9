# Tests package for hf-surgery
