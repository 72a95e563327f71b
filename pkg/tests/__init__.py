"""
Test suite for rlct
"""
