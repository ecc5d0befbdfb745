"""Periodic plane curves of split maps and uniform period bounds."""
