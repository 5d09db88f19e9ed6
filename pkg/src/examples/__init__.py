"""Examples demonstrating how to use ABTK.

"""
