"""Modules related to moduli spaces and dualities"""
