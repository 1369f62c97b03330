# Information bounds and black-hole emission toolkit
