"""Modules related to dual graphs of rational curves"""
