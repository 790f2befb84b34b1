"""Modules related to elliptic and quartic surfaces"""
