# data files for the shipped triangulations
