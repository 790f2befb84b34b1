"""Modules related to config"""
