"""
Services package: counting, numeration, adherence, reals and reference oracles.
"""
