"""Cayley-Oguiso determinantal quartic toolkit."""
