"""Setup script for the covertlink library."""

from setuptools import setup, find_packages

# Read requirements
with open("covertlink/requirements.txt") as f:
    requirements = [line for line in f.read().splitlines() if line.strip()]

# Read the actual README.md file
with open("covertlink/README.md", "r", encoding="utf-8") as f:
    long_description = f.read()

setup(
    name="covertlink",
    version="0.1.0",
    description="Robust covert wireless link design under bounded uncertainty",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires=requirements,
    extras_require={
        "dev": ["pytest>=7.0"],
    },
    entry_points={
        "console_scripts": [
            "covertlink=covertlink.cli:main",
        ],
    },
    python_requires=">=3.8",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering",
        "Topic :: Communications",
    ],
    keywords="covert communication radiometer energy detector outage robust design",
)
