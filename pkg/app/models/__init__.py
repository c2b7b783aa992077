# models package 