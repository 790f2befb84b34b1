"""Modules related to integer lattices"""
