"""Modules related to the command line"""
