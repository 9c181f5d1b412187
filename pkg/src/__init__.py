"""
confsplit - main package
"""
