"""Modules related to exact algebra"""
