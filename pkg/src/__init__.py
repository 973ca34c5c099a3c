# Shift-Inclusion Morphology - nested structuring elements on restricted pixel sets