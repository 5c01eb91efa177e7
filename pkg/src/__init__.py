"""braidrep: Artin group representations checked with Garside normal forms"""
