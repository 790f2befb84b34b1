"""Modules related to utils"""
